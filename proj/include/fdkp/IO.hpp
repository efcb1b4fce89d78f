#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fdkp/Field.hpp"

namespace fdkp {

// All numeric text output carries full double precision (17 significant digits)
// with locale-independent decimal points.

inline std::string fullPrecision(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

/// Headered CSV (x, y, value), x fastest.
inline void writeFieldCsv(const std::string& path, const RealField2d& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("writeFieldCsv: cannot open " + path);
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "x,y,value\n";
  const Grid2d& g = f.grid();
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) os << g.x(i) << ',' << g.y(j) << ',' << f(i, j) << '\n';
}

// Raw little-endian field format: magic, dims, half-periods, column-major doubles.
inline constexpr char kFieldMagic[8] = {'F', 'D', 'K', 'P', 'F', 'L', 'D', '1'};

inline void writeFieldBinary(const std::string& path, const RealField2d& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("writeFieldBinary: cannot open " + path);
  os.write(kFieldMagic, 8);
  const int64_t nx = f.grid().nx(), ny = f.grid().ny();
  const double Lx = f.grid().Lx(), Ly = f.grid().Ly();
  os.write(reinterpret_cast<const char*>(&nx), 8);
  os.write(reinterpret_cast<const char*>(&ny), 8);
  os.write(reinterpret_cast<const char*>(&Lx), 8);
  os.write(reinterpret_cast<const char*>(&Ly), 8);
  os.write(reinterpret_cast<const char*>(f.values().data()), sizeof(double) * nx * ny);
}

inline RealField2d readFieldBinary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("readFieldBinary: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (std::memcmp(magic, kFieldMagic, 8) != 0)
    throw std::runtime_error("readFieldBinary: bad magic in " + path);
  int64_t nx = 0, ny = 0;
  double Lx = 0, Ly = 0;
  is.read(reinterpret_cast<char*>(&nx), 8);
  is.read(reinterpret_cast<char*>(&ny), 8);
  is.read(reinterpret_cast<char*>(&Lx), 8);
  is.read(reinterpret_cast<char*>(&Ly), 8);
  Grid2d g(nx, ny, Lx, Ly);
  RealField2d f(g);
  is.read(reinterpret_cast<char*>(f.values().data()), sizeof(double) * nx * ny);
  if (!is) throw std::runtime_error("readFieldBinary: truncated file " + path);
  return f;
}

/// Ordered plain-text key = value store used for run manifests, field sidecars
/// and config files. '#' starts a comment.
class KeyValueFile {
 public:
  void set(const std::string& key, const std::string& value) {
    if (!map_.count(key)) order_.push_back(key);
    map_[key] = value;
  }
  void set(const std::string& key, double value) { set(key, fullPrecision(value)); }
  void set(const std::string& key, Index value) { set(key, std::to_string(value)); }

  bool has(const std::string& key) const { return map_.count(key) > 0; }
  const std::string& get(const std::string& key) const {
    auto it = map_.find(key);
    if (it == map_.end()) throw std::runtime_error("KeyValueFile: missing key " + key);
    return it->second;
  }
  std::string getOr(const std::string& key, const std::string& fallback) const {
    auto it = map_.find(key);
    return it == map_.end() ? fallback : it->second;
  }
  double getDouble(const std::string& key) const { return std::stod(get(key)); }

  const std::vector<std::string>& keys() const { return order_; }

  void write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("KeyValueFile: cannot open " + path);
    for (const auto& k : order_) os << k << " = " << map_.at(k) << '\n';
  }

  static KeyValueFile read(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("KeyValueFile: cannot open " + path);
    KeyValueFile kv;
    std::string line;
    while (std::getline(is, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (!key.empty()) kv.set(key, value);
    }
    return kv;
  }

 private:
  std::map<std::string, std::string> map_;
  std::vector<std::string> order_;
};

}  // namespace fdkp
