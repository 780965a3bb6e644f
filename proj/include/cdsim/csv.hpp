#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "cdsim/propagator.hpp"

namespace cdsim::harness {

// Full-precision decimal float, 17 significant digits. snprintf keeps the
// output byte-identical across runs.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Schema: t,P1,P2[,P3],norm,reC1,imC1,reC2,imC2[,reC3,imC3]
inline void write_trajectory_csv(std::ostream& out, const propagator::Trajectory& tr) {
  const int d = tr.dim();
  out << "t";
  for (int i = 1; i <= d; ++i) out << ",P" << i;
  out << ",norm";
  for (int i = 1; i <= d; ++i) out << ",reC" << i << ",imC" << i;
  out << "\n";
  for (std::size_t row = 0; row < tr.times.size(); ++row) {
    const auto& s = tr.states[row];
    out << fmt17(tr.times[row]);
    for (int i = 0; i < d; ++i) out << ',' << fmt17(std::norm(s(i)));
    out << ',' << fmt17(s.norm());
    for (int i = 0; i < d; ++i)
      out << ',' << fmt17(s(i).real()) << ',' << fmt17(s(i).imag());
    out << "\n";
  }
}

}  // namespace cdsim::harness
