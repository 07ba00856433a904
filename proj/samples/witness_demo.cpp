// Builds a verified witness matrix whose determinant is a requested value,
// with all entries drawn from a small set.

#include <iostream>

#include "detset/detset.hpp"

int main() {
  using namespace detset;

  ZRing z;
  ElemSet<ZRing> entries = ElemSet<ZRing>::of_ints(z, {0, 1});
  GadgetWitness<ZRing> w = synthesize_witness(entries, 3, 2, Int(-2));

  std::cout << "target -2 realized by a " << w.size() << "x" << w.size()
            << " matrix over " << format_set(entries) << ":\n";
  for (std::size_t i = 0; i < w.matrix().rows(); ++i) {
    for (std::size_t j = 0; j < w.matrix().cols(); ++j)
      std::cout << w.matrix().at(i, j) << (j + 1 < w.matrix().cols() ? " " : "");
    std::cout << "\n";
  }
  std::cout << "det = " << det(w.matrix()) << "\n";
  std::cout << witness_to_json(w).dump(2) << "\n";
  return 0;
}
