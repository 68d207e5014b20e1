#include "sburgers/manifest.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sburgers/errors.hpp"

namespace sburgers {

void RunManifest::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void RunManifest::set(const std::string& key, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  set(key, std::string(buf));
}

void RunManifest::set(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
}

void RunManifest::set(const std::string& key, int value) {
  set(key, std::to_string(value));
}

void RunManifest::add_output(const std::string& relative_path) {
  outputs_.push_back(relative_path);
}

std::optional<std::string> RunManifest::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

void RunManifest::write(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest '" + tmp + "'");
    for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
    for (std::size_t i = 0; i < outputs_.size(); ++i)
      out << "output." << i << " = " << outputs_[i] << "\n";
    out.flush();
    if (!out) throw std::runtime_error("short write to manifest '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

RunManifest RunManifest::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest '" + path + "'");
  RunManifest m;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("output.", 0) == 0)
      m.outputs_.push_back(value);
    else
      m.entries_.emplace_back(key, value);
  }
  return m;
}

}  // namespace sburgers
