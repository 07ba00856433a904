// Certifies that every element of a prime field is the determinant of a
// fixed-size matrix with entries in {1,3}, and prints one witness per value.

#include <iostream>

#include "detset/detset.hpp"

int main() {
  using namespace detset;

  Fp f7(7);
  ElemSet<Fp> a = ElemSet<Fp>::of_ints(f7, {1, 3});
  CoverageCertificate<Fp> cert = coverage_certificate(a, 64);

  std::cout << "entries " << format_set(a) << " cover F_" << f7.modulus()
            << " at matrix size " << cert.matrix_size << " (m = " << cert.m
            << ", n = " << cert.n << ")\n";
  for (Fp::Elem t = 0; t < f7.modulus(); ++t) {
    GadgetWitness<Fp> w = cert.witness_for(t);
    std::cout << "det = " << w.value() << " via a " << w.size() << "x"
              << w.size() << " matrix, scale " << w.scale() << "\n";
  }
  return 0;
}
