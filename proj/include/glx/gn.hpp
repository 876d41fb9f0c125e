#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "glx/field.hpp"

namespace glx {

// Interpolation-constant estimate for the inequality
//   ||u||_{L2}^{((N+2)-m(N-2))/2} <= C ||u||_{L^{m+1}}^{m+1} ||grad u||^{N(1-m)/2}
// over the discrete norms of one grid. The estimate is the max ratio over a
// deterministic probe family, hence a lower bound on the discrete constant.
struct GnEstimate {
  double m = 0.0;
  int dim = 1;
  double c_gn = 0.0;
  int family_size = 0;
  std::string worst_field_descriptor;
  ComplexField worst_field;
};

// Ratio ||u||^s / (||u||_{m+1}^{m+1} ||grad u||^{N(1-m)/2}),
// s = ((N+2) - m(N-2))/2. Invariant under scalar rescaling and dilation.
double gn_ratio(const ComplexField& u, double m);

// Probe family: gaussians, mollifier bumps, flat tops, eigenmode mixes and
// seeded random smooth fields at several widths. Probe i depends only on
// (i, seed, grid), so enlarging the family never changes earlier probes and
// the estimate is monotone in family_size. Deterministic given the seed.
GnEstimate estimate_cgn(double m, const Grid& grid, int family_size,
                        std::uint64_t seed);

// Evaluates ||u||^{2 delta} <= c_gn^{4/(N(1-m)+4)} (||grad u||^2 +
// ||u||_{m+1}^{m+1}) with the supplied constant. Returns the achieved
// interpolation ratio normalized by c_gn (1 means u saturates the estimate)
// and whether the displayed inequality holds. Rejects the zero field.
std::pair<double, bool> check_gn(const ComplexField& u, double m, double c_gn);

}  // namespace glx
