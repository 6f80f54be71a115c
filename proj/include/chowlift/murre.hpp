#pragma once

#include <string>
#include <vector>

#include "chowlift/correspond.hpp"

namespace chowlift {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool overall = true;

  void add(std::string name, bool pass, std::string witness = "");
  std::string first_failure() const;
};

// Chow-Kunneth axioms: the projectors sum to the diagonal, are mutually
// orthogonal idempotents, and each carries only the product-cycle type of
// its index (the Kunneth-grading proxy for the cycle-map condition).
VerificationReport verify_ck(const CKDecomposition& dec);

// pi_{2d-i} equals the transpose of pi_i.
VerificationReport check_poincare(const CKDecomposition& dec);

// Vanishing of projector actions: pi_i acts as zero on CH^j for i < j or
// i > 2j (B), respectively i < j or i > j + d (B').
VerificationReport check_B(const CKDecomposition& dec);
VerificationReport check_Bprime(const CKDecomposition& dec);

// Descending filtration of CH^j induced by a decomposition:
// F^0 = CH^j, F^k = Ker pi_{2j+1-k} restricted to F^{k-1}; projector
// indices outside [0, 2d] act as zero, so the chain stabilizes.
struct Filtration {
  int codim = 0;
  std::vector<RatMatrix> chain;  // chain[k] = echelon row basis of F^k
};

Filtration filtration(const CKDecomposition& dec, int j);

// Agreement of the induced filtrations among the provided decompositions,
// compared as subspaces at every codimension and level.
VerificationReport check_C(const std::vector<CKDecomposition>& variants);

// Cellular proxy for the homological-vanishing conjecture: on cellular data
// the only homologically trivial cycle is 0, so F^1 must vanish everywhere.
// Throws UnsupportedDatumError on non-cellular data.
VerificationReport check_D_cellular(const CKDecomposition& dec);

}  // namespace chowlift
