#include "mbm/sample_path.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "mbm/errors.hpp"

namespace mbm {

namespace {
constexpr char kMagic[8] = {'M', 'B', 'M', 'P', 'A', 'T', 'H', '1'};
}

SamplePath::SamplePath(double dt, std::vector<double> values, std::uint64_t seed,
                       nlohmann::json meta)
    : dt_(dt), values_(std::move(values)), seed_(seed), meta_(std::move(meta)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw DomainError("path step must be positive");
  if (values_.size() < 2) throw DomainError("path needs at least two points");
}

SamplePath SamplePath::prefix(std::size_t m) const {
  if (m < 1 || m > n()) throw DomainError("prefix length out of range");
  return SamplePath(dt_, std::vector<double>(values_.begin(), values_.begin() + m + 1), seed_,
                    meta_);
}

void SamplePath::write_csv(const std::filesystem::path& file) const {
  std::FILE* f = std::fopen(file.c_str(), "w");
  if (!f) throw IoError("cannot write " + file.string());
  std::fputs("t,value\n", f);
  for (std::size_t i = 0; i < values_.size(); ++i)
    std::fprintf(f, "%.17g,%.17g\n", t(i), values_[i]);
  if (std::fclose(f) != 0) throw IoError("cannot write " + file.string());
}

SamplePath SamplePath::read_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read " + file.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("t,value", 0) != 0) throw IoError(file.string() + ": missing 't,value' header");
  std::vector<double> ts, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError(file.string() + ": malformed row");
    try {
      ts.push_back(std::stod(line.substr(0, comma)));
      vs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError(file.string() + ": malformed number in '" + line + "'");
    }
  }
  if (vs.size() < 2) throw IoError(file.string() + ": fewer than two rows");
  const double dt = ts[1] - ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (std::abs(ts[i] - ts[0] - dt * static_cast<double>(i)) > 1e-9 * std::max(1.0, ts.back()))
      throw IoError(file.string() + ": grid is not uniform");
  }
  if (ts.front() != 0.0) throw IoError(file.string() + ": grid must start at t=0");
  return SamplePath(dt, std::move(vs));
}

void SamplePath::write_binary(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  const std::uint64_t count = values_.size();
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(&dt_), sizeof dt_);
  out.write(reinterpret_cast<const char*>(&seed_), sizeof seed_);
  out.write(reinterpret_cast<const char*>(values_.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) throw IoError("cannot write " + file.string());
}

SamplePath SamplePath::read_binary(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  char magic[8];
  std::uint64_t count = 0, seed = 0;
  double dt = 0.0;
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw IoError(file.string() + ": not an MBMPATH1 file");
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  in.read(reinterpret_cast<char*>(&dt), sizeof dt);
  in.read(reinterpret_cast<char*>(&seed), sizeof seed);
  if (!in || count > (1ull << 32)) throw IoError(file.string() + ": corrupt header");
  std::vector<double> v(count);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw IoError(file.string() + ": truncated");
  return SamplePath(dt, std::move(v), seed);
}

nlohmann::json SamplePath::sidecar() const {
  return {{"dt", dt_}, {"n", n()}, {"horizon", horizon()}, {"seed", seed_}, {"meta", meta_}};
}

void SamplePath::write_sidecar(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << sidecar().dump(2) << '\n';
}

}  // namespace mbm
