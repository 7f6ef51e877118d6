// Builds the two A_2/A_3 bisets from their size matrices, composes them and
// prints the size matrices plus the per-cell union-find counts.

#include <iostream>

#include "fincat/fincat.hpp"

using namespace fincat;

static void print(const char* label, const SizeMatrix& m) {
  std::cout << label << ":\n";
  for (const auto& row : m) {
    for (auto v : row) std::cout << " " << v;
    std::cout << "\n";
  }
}

int main() {
  CatPtr a2 = chain(2), a3 = chain(3);
  Biset omega = biset_from_size_matrix(a2, a3, {{1, 1, 0}, {1, 1, 1}});
  Biset psi = biset_from_size_matrix(a3, a2, {{1, 0}, {1, 0}, {1, 1}});

  CompositionTrace trace;
  Biset comp = compose_bisets(omega, psi, &trace);

  print("|Omega|", omega.size_matrix());
  print("|Psi|", psi.size_matrix());
  print("|Omega||Psi|", multiply(omega.size_matrix(), psi.size_matrix()));
  print("|Omega o Psi|", comp.size_matrix());

  for (std::size_t x = 0; x < trace.rows; ++x)
    for (std::size_t z = 0; z < trace.cols; ++z) {
      const auto& c = trace.cell(x, z);
      std::cout << "cell (" << x + 1 << "," << z + 1 << "): " << c.candidate_pairs << " pairs, " << c.unions.size()
                << " merges, " << c.classes << " classes\n";
    }
}
