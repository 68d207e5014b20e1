#pragma once

#include <optional>
#include <vector>

#include "sburgers/field.hpp"
#include "sburgers/noise.hpp"
#include "sburgers/rng.hpp"

namespace sburgers {

/// State of the driven linear (Ornstein–Uhlenbeck) equation at one time.
/// The stored field is the scalar potential when the noise has gradient form,
/// and the velocity itself otherwise.
struct OUState {
  double t = 0.0;
  Field state;
};

/// Zero state at t = 0 with the layout implied by the noise operator.
OUState ou_initial_state(const NoiseOperator& noise);

/// One exact-in-law update over dt: per mode,
///   z' = e^{-ν|k|²dt} z + f_k φ(ν|k|², dt) + η,
/// with φ(λ,dt) = (1-e^{-λdt})/λ (→ dt at λ=0) and η complex Gaussian of
/// variance σ_k²(1-e^{-2ν|k|²dt})/(2ν|k|²) (→ σ²dt at k=0), mirrored so the
/// physical state stays real. Exact for forcing constant on the step. The
/// forcing must match the state layout (scalar potential vs vector).
OUState ou_step(const OUState& state, double dt, double nu,
                const std::optional<Field>& forcing, const NoiseOperator& noise,
                RngStream& rng);

/// Velocity field of a state: the state itself, or the gradient of the
/// potential for gradient-form noise.
Field ou_velocity(const OUState& state, const NoiseOperator& noise);

struct OUPathOptions {
  bool keep_fields = true;   // store the velocity field at every step
  bool record_norms = true;  // track the norms the estimate monitors need
  double p = 2.0;            // Lebesgue exponent for the records
  bool dealias = true;       // dealiasing for the F(z) record
};

/// Time series of the stochastic convolution plus the running quantities the
/// a priori estimates consume. Sups include the current time; integrals are
/// left-endpoint sums (z is only Hölder in time).
class OUPath {
public:
  struct Record {
    double t = 0.0;
    double z_lp = 0.0;
    double z_sob1p = 0.0;
    double z_sob2p = 0.0;
    double z_sob3p = 0.0;
    double grad_z_inf = 0.0;
    double fz_lp = 0.0;       // |F(z)|_p at this time
    double sup_z_lp = 0.0;
    double sup_sob1p = 0.0;
    double sup_sob2p = 0.0;
    double sup_sob3p = 0.0;
    double sup_grad_inf = 0.0;
    double int_grad_inf = 0.0;  // ∫₀ᵗ |∇z|_∞ ds
    double int_fz_lp = 0.0;     // ∫₀ᵗ |F(z)|_p ds
  };

  double dt() const { return dt_; }
  std::size_t steps() const { return times_.empty() ? 0 : times_.size() - 1; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<Field>& fields() const { return fields_; }
  const std::vector<Record>& records() const { return records_; }

  const Field& field_at(std::size_t i) const { return fields_.at(i); }
  const Record& record_at(std::size_t i) const { return records_.at(i); }
  /// Index of the record at time t (t must sit on the step grid).
  std::size_t index_of(double t) const;

  /// Forcing used when the path was generated (empty if none).
  const std::optional<Field>& forcing() const { return forcing_; }

private:
  friend class OUSampler;
  friend OUPath ou_path(double, double, double, const std::optional<Field>&,
                        const NoiseOperator&, RngStream, const OUPathOptions&);
  double dt_ = 0.0;
  std::vector<double> times_;
  std::vector<Field> fields_;
  std::vector<Record> records_;
  std::optional<Field> forcing_;
};

/// Incremental generator of the OU path; `solve` consumes states one step at
/// a time instead of materializing a whole path.
class OUSampler {
public:
  OUSampler(double dt, double nu, std::optional<Field> forcing,
            const NoiseOperator& noise, RngStream rng, OUPathOptions options = {});

  const OUState& state() const { return state_; }
  const Field& velocity() const { return velocity_; }
  const OUPath::Record& record() const { return record_; }
  void advance();

private:
  void refresh();

  double dt_;
  double nu_;
  std::optional<Field> forcing_;
  const NoiseOperator& noise_;
  RngStream rng_;
  OUPathOptions options_;
  OUState state_;
  Field velocity_;
  OUPath::Record record_;
};

/// Iterated ou_step from z(0) = 0 over [0, T]; dt must divide T within
/// rounding.
OUPath ou_path(double T, double dt, double nu, const std::optional<Field>& forcing,
               const NoiseOperator& noise, RngStream rng,
               const OUPathOptions& options = {});

/// Least-squares slope of log ||z(t+ℓ)-z(t)|| versus log ℓ over dyadic lags,
/// in the H^{order,p} norm (order 0 = L^p). Needs a path of ≥ 100 steps with
/// fields kept. Returns +∞ for a frozen path.
double holder_exponent_estimate(const OUPath& path, int sobolev_order, double p);

}  // namespace sburgers
