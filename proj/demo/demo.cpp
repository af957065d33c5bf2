// Small tour of the library: Bergman fans, products, degrees and M_5.

#include <iostream>

#include "tropint/tropint.hpp"

int main() {
  using namespace tropint;

  const Matroid plane = uniform(3, 4);
  const BraidCycle b = bergman_fan(plane);
  std::cout << "B(U3,4): dim " << to_fan(b).dim() << ", " << plane.maximal_chains().size() << " maximal cones\n";

  // A tropical line inside the tropical plane, and its self-intersection.
  const Matroid line = from_bases(4, {0b0101, 0b1001, 0b0110, 0b1010}, "N");
  const BraidCycle n = bergman_fan(line);
  const BraidCycle self = intersect_on_matroid(plane, n, n);
  std::cout << "B(N) . B(N) in B(U3,4): " << json::dump(json::fan(to_fan(self)));

  // The lines max(x1, x2) and max(x3, x4) in the projective plane meet once.
  const FanCycle p = to_fan(b);
  const FanCycle l1 = divisor(PLFunction::max_of({{1, 0, 0, 0}, {0, 1, 0, 0}}), p);
  const FanCycle l2 = divisor(PLFunction::max_of({{0, 0, 1, 0}, {0, 0, 0, 1}}), p);
  std::cout << "degree of the intersection of two lines: " << projective_degree(intersect_on_matroid(plane, l1, l2))
            << "\n";

  // M_5 as a quotient of B(K_4).
  const ModuliModel m5 = moduli_mn(5);
  std::cout << "M_5: det f = " << m5.determinant << ", image of dimension " << m5.image.dim() << "\n";
  return 0;
}
