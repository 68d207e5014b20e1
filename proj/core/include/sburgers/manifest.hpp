#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sburgers {

/// Flat key-value run manifest. Written before any output (completed=false),
/// rewritten atomically (temp file + rename) on completion with the full
/// output inventory and per-sample statuses.
class RunManifest {
public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, int value);
  void add_output(const std::string& relative_path);

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  const std::vector<std::string>& outputs() const { return outputs_; }
  std::optional<std::string> get(const std::string& key) const;

  void write(const std::string& path) const;
  static RunManifest read(const std::string& path);

private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::string> outputs_;
};

}  // namespace sburgers
