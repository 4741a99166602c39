#include "vps/csvio.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

namespace vps {

void write_scalar_field_csv(std::ostream& os, const ScalarField& f) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "L,n\n%.17g,%d\n", f.box_size, f.n);
  os << buf;
  for (double v : f.values) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    os << buf;
  }
}

ScalarField read_scalar_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("L,n", 0) != 0)
    throw std::runtime_error("field CSV: expected 'L,n' header");
  if (!std::getline(is, line)) throw std::runtime_error("field CSV: missing shape line");
  double L = 0.0;
  int n = 0;
  if (std::sscanf(line.c_str(), "%lg,%d", &L, &n) != 2)
    throw std::runtime_error("field CSV: malformed shape line '" + line + "'");
  ScalarField f = ScalarField::zeros(L, n);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!std::getline(is, line))
      throw std::runtime_error("field CSV: truncated after " + std::to_string(i) + " values");
    f.values[i] = std::stod(line);
  }
  return f;
}

void write_radial_csv(std::ostream& os, const RadialSolution& sol) {
  os << "r,Q,R,S,H1,H\n";
  char buf[192];
  for (int i = 0; i < sol.Q.interior(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", sol.Q.r(i),
                  sol.Q.values[i], sol.R.values[i], sol.S.values[i], sol.H1.values[i],
                  sol.H.values[i]);
    os << buf;
  }
}

std::ofstream open_output(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open output file " + p.string());
  return os;
}

}  // namespace vps
