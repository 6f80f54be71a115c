#include "chowlift/murre.hpp"

#include <sstream>

#include "chowlift/errors.hpp"
#include "chowlift/parallel.hpp"

namespace chowlift {

void VerificationReport::add(std::string name, bool pass,
                             std::string witness) {
  overall = overall && pass;
  checks.push_back(CheckResult{std::move(name), pass, std::move(witness)});
}

std::string VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name + ": " + c.witness;
  return "";
}

namespace {

std::string diff_witness(const Correspondence& got,
                         const Correspondence& want) {
  for (int i = got.block_min(); i <= got.block_max(); ++i) {
    const RatMatrix g = got.block(i);
    const RatMatrix w = want.block(i);
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c)
        if (!(g.at(r, c) == w.at(r, c)))
          return "block (" + std::to_string(i) + "," +
                 std::to_string(got.codim() - i) + ") entry (" +
                 std::to_string(r) + "," + std::to_string(c) + ") is " +
                 g.at(r, c).get_str() + ", expected " + w.at(r, c).get_str();
  }
  return "";
}

// Action of a projector on CH^j as a matrix on coefficient rows.
RatMatrix action_matrix(const Correspondence& p, int j) {
  const DatumPtr& x = p.source();
  const int d = x->dimension();
  return x->pairing(j) * p.block(d - j);
}

}  // namespace

VerificationReport verify_ck(const CKDecomposition& dec) {
  VerificationReport report;
  const int d = dec.datum->dimension();
  const auto& pis = dec.projectors;

  // (i) The projectors sum to the diagonal.
  try {
    const Correspondence diag = diagonal(dec.datum);
    const Correspondence total = sum(pis);
    const bool ok = total == diag;
    report.add("sum-equals-diagonal", ok,
               ok ? "" : diff_witness(total, diag));
  } catch (const UnsupportedDatumError& e) {
    report.add("sum-equals-diagonal", false, e.what());
  }

  // (ii) Mutually orthogonal idempotents; the pair sweep is data-parallel
  // with the witness picked deterministically by pair index.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i <= 2 * d; ++i)
    for (int j = i; j <= 2 * d; ++j) pairs.emplace_back(i, j);
  std::vector<std::string> failures(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    if (i == j) {
      const Correspondence sq = compose(pis[i], pis[i]);
      if (!(sq == pis[i]))
        failures[k] = "pi_" + std::to_string(i) + " not idempotent: " +
                      diff_witness(sq, pis[i]);
    } else {
      const Correspondence ij = compose(pis[i], pis[j]);
      if (!ij.is_zero()) {
        failures[k] = "pi_" + std::to_string(i) + " • pi_" +
                      std::to_string(j) + " != 0: " +
                      diff_witness(ij, Correspondence::zero(
                                           dec.datum, dec.datum, d));
        return;
      }
      const Correspondence ji = compose(pis[j], pis[i]);
      if (!ji.is_zero())
        failures[k] = "pi_" + std::to_string(j) + " • pi_" +
                      std::to_string(i) + " != 0: " +
                      diff_witness(ji, Correspondence::zero(
                                           dec.datum, dec.datum, d));
    }
  });
  std::string witness;
  for (const auto& f : failures)
    if (!f.empty()) {
      witness = f;
      break;
    }
  report.add("orthogonal-idempotents", witness.empty(), witness);

  // (iii proxy) Each pi_j holds only product cycles of its Kunneth type:
  // block (d - j/2, j/2) for even j, nothing at all for odd j.
  std::string type_witness;
  for (int j = 0; j <= 2 * d && type_witness.empty(); ++j)
    for (int i = pis[j].block_min(); i <= pis[j].block_max(); ++i) {
      if (j % 2 == 0 && i == d - j / 2) continue;
      if (!pis[j].block(i).is_zero()) {
        type_witness = "pi_" + std::to_string(j) +
                       " carries a product cycle of type (" +
                       std::to_string(i) + "," + std::to_string(d - i) + ")";
        break;
      }
    }
  report.add("kunneth-type-grading", type_witness.empty(), type_witness);
  return report;
}

VerificationReport check_poincare(const CKDecomposition& dec) {
  VerificationReport report;
  const int d = dec.datum->dimension();
  std::string witness;
  for (int i = 0; i <= 2 * d; ++i) {
    const Correspondence t = dec.projectors[i].transpose();
    if (!(t == dec.projectors[2 * d - i])) {
      witness = "transpose of pi_" + std::to_string(i) + " != pi_" +
                std::to_string(2 * d - i) + ": " +
                diff_witness(t, dec.projectors[2 * d - i]);
      break;
    }
  }
  report.add("poincare-duality", witness.empty(), witness);
  return report;
}

namespace {

VerificationReport check_vanishing(const CKDecomposition& dec,
                                   const char* check_name, bool bprime) {
  VerificationReport report;
  const int d = dec.datum->dimension();
  std::string witness;
  for (int i = 0; i <= 2 * d && witness.empty(); ++i)
    for (int j = 0; j <= d && witness.empty(); ++j) {
      const bool vanish = bprime ? (i < j || i > j + d) : (i < j || i > 2 * j);
      if (!vanish) continue;
      const RatMatrix m = action_matrix(dec.projectors[i], j);
      if (!m.is_zero()) {
        for (std::size_t p = 0; p < m.rows() && witness.empty(); ++p)
          if (!is_zero_vector(m.row(p)))
            witness = "pi_" + std::to_string(i) + " does not vanish on " +
                      dec.datum->labels(j)[p] + " in CH^" + std::to_string(j);
      }
    }
  report.add(check_name, witness.empty(), witness);
  return report;
}

}  // namespace

VerificationReport check_B(const CKDecomposition& dec) {
  return check_vanishing(dec, "murre-B-vanishing", false);
}

VerificationReport check_Bprime(const CKDecomposition& dec) {
  return check_vanishing(dec, "murre-Bprime-vanishing", true);
}

Filtration filtration(const CKDecomposition& dec, int j) {
  const int d = dec.datum->dimension();
  const std::size_t n = dec.datum->dim_ch(j);
  Filtration out;
  out.codim = j;
  out.chain.push_back(RatMatrix::identity(n));
  for (int k = 1; k <= j + 1; ++k) {
    const RatMatrix& prev = out.chain.back();
    const int index = 2 * j + 1 - k;
    if (index < 0 || index > 2 * d) {
      // Out-of-range projectors act as zero, so the chain stabilizes.
      out.chain.push_back(prev);
      continue;
    }
    const RatMatrix action = action_matrix(dec.projectors[index], j);
    // Kernel of the action restricted to the previous level: row vectors
    // c with c (prev * action) = 0, mapped back through prev.
    const RatMatrix restricted = (prev * action).transposed();
    const RatMatrix coeffs = kernel(restricted);
    out.chain.push_back(row_space_basis(coeffs * prev));
  }
  return out;
}

VerificationReport check_C(const std::vector<CKDecomposition>& variants) {
  VerificationReport report;
  for (std::size_t m = 1; m < variants.size(); ++m)
    if (variants[m].datum != variants[0].datum)
      throw AmbientMismatchError(
          "filtration comparison needs decompositions on the same datum");
  std::string witness;
  if (variants.size() >= 2) {
    const int d = variants[0].datum->dimension();
    std::vector<Filtration> reference;
    for (int j = 0; j <= d; ++j) reference.push_back(filtration(variants[0], j));
    for (std::size_t m = 1; m < variants.size() && witness.empty(); ++m)
      for (int j = 0; j <= d && witness.empty(); ++j) {
        const Filtration f = filtration(variants[m], j);
        for (std::size_t k = 0; k < f.chain.size(); ++k)
          if (!span_equal(f.chain[k], reference[j].chain[k])) {
            witness = "filtration of CH^" + std::to_string(j) +
                      " differs at level " + std::to_string(k) +
                      " between variants 0 and " + std::to_string(m);
            break;
          }
      }
  }
  report.add("filtration-agreement", witness.empty(),
             witness.empty() ? (variants.size() < 2
                                    ? "agreement among provided variants "
                                      "(single variant)"
                                    : "")
                             : witness);
  return report;
}

VerificationReport check_D_cellular(const CKDecomposition& dec) {
  if (!dec.datum->cellular())
    throw UnsupportedDatumError(
        "homological vanishing is only checkable on cellular data");
  VerificationReport report;
  const int d = dec.datum->dimension();
  std::string witness;
  for (int j = 0; j <= d && witness.empty(); ++j) {
    const Filtration f = filtration(dec, j);
    if (f.chain[1].rows() != 0)
      witness = "F^1 CH^" + std::to_string(j) + " has dimension " +
                std::to_string(f.chain[1].rows()) + ", expected 0";
  }
  report.add("homologically-trivial-step", witness.empty(), witness);
  return report;
}

}  // namespace chowlift
