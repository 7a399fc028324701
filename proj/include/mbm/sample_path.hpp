#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

namespace mbm {

/// One realization on the uniform grid t_i = i * dt, i = 0..n. Immutable.
class SamplePath {
 public:
  SamplePath(double dt, std::vector<double> values, std::uint64_t seed = 0,
             nlohmann::json meta = nlohmann::json::object());

  double dt() const { return dt_; }
  /// Number of steps; there are n() + 1 values.
  std::size_t n() const { return values_.size() - 1; }
  double horizon() const { return dt_ * static_cast<double>(n()); }
  double t(std::size_t i) const { return dt_ * static_cast<double>(i); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double back() const { return values_.back(); }
  std::uint64_t seed() const { return seed_; }
  const nlohmann::json& meta() const { return meta_; }

  /// Prefix up to step m (inclusive).
  SamplePath prefix(std::size_t m) const;

  /// CSV with header "t,value", 17 significant digits.
  void write_csv(const std::filesystem::path& file) const;
  static SamplePath read_csv(const std::filesystem::path& file);

  /// Binary column format: magic "MBMPATH1", u64 count, f64 dt, u64 seed,
  /// then count doubles (little-endian host order).
  void write_binary(const std::filesystem::path& file) const;
  static SamplePath read_binary(const std::filesystem::path& file);

  /// {dt, n, horizon, seed, meta}.
  nlohmann::json sidecar() const;
  void write_sidecar(const std::filesystem::path& file) const;

 private:
  double dt_;
  std::vector<double> values_;
  std::uint64_t seed_;
  nlohmann::json meta_;
};

}  // namespace mbm
