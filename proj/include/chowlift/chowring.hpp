#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chowlift/linalg.hpp"

namespace chowlift {

class ChowDatum;
using DatumPtr = std::shared_ptr<const ChowDatum>;

// Homogeneous cycle class: codimension tag plus coefficients over the graded
// basis of its datum. Codimensions outside [0, d] are allowed and carry an
// empty coefficient vector (the zero graded piece).
class Class {
 public:
  Class() = default;
  Class(DatumPtr datum, int codim, RatVector coeffs);

  const DatumPtr& datum() const { return datum_; }
  int codim() const { return codim_; }
  const RatVector& coeffs() const { return coeffs_; }

  bool is_zero() const { return is_zero_vector(coeffs_); }
  Rational codim0_coefficient() const;

  friend bool operator==(const Class& a, const Class& b);
  friend Class operator+(const Class& a, const Class& b);
  friend Class operator-(const Class& a, const Class& b);
  friend Class operator*(const Class& a, const Class& b);  // intersection product
  Class scaled(const Rational& s) const;

  std::string str() const;

 private:
  DatumPtr datum_;
  int codim_ = 0;
  RatVector coeffs_;
};

// Strong Kunneth pair: the diagonal summand lambda x mu.
struct KunnethPairRaw {
  int lambda_codim = 0;  // mu has codim d - lambda_codim
  RatVector lambda;
  RatVector mu;
};

// Index bookkeeping for graded tensor-product data.
struct ProductInfo {
  DatumPtr left, right;
  // offsets[k][i]: flat start of the (codim-i left, codim-(k-i) right) group
  // inside the codim-k basis; negative when the pair is empty.
  std::vector<std::vector<std::ptrdiff_t>> offsets;

  std::size_t index(int left_codim, std::size_t left_index, int right_codim,
                    std::size_t right_index) const;

  struct Split {
    int left_codim;
    std::size_t left_index;
    int right_codim;
    std::size_t right_index;
  };
  Split split(int codim, std::size_t flat_index) const;
};

// Finite model of a rational Chow ring: graded basis, structure constants,
// degree map, optional strong Kunneth data. Immutable after create(), which
// checks every stated invariant (associativity and commutativity on all
// basis triples/pairs, unit law, Kunneth pairing nondegeneracy, diagonal
// acting as identity).
class ChowDatum : public std::enable_shared_from_this<ChowDatum> {
 public:
  struct Data {
    int dimension = 0;
    std::vector<std::vector<std::string>> basis;  // labels, one list per codim
    // mult[i][j]: (n_i * n_j) x n_{i+j} table; row p * n_j + q holds the
    // coefficients of basis_i[p] * basis_j[q]. Stored for i + j <= dimension.
    std::vector<std::vector<RatMatrix>> mult;
    RatVector degree;  // linear functional on the codim-d piece
    std::vector<KunnethPairRaw> kunneth;
    bool has_kunneth = false;
    bool cellular = false;
    std::string name;
    std::optional<ProductInfo> product;
  };

  static DatumPtr create(Data data);

  int dimension() const { return data_.dimension; }
  std::size_t dim_ch(int codim) const {
    if (codim < 0 || codim > data_.dimension) return 0;
    return data_.basis[codim].size();
  }
  const std::vector<std::string>& labels(int codim) const {
    return data_.basis[codim];
  }
  const RatVector& degree_vector() const { return data_.degree; }
  bool has_kunneth() const { return data_.has_kunneth; }
  const std::vector<KunnethPairRaw>& kunneth_raw() const {
    return data_.kunneth;
  }
  bool cellular() const { return data_.cellular; }
  const std::string& name() const { return data_.name; }
  const std::optional<ProductInfo>& product_info() const {
    return data_.product;
  }

  // Row of the structure-constant table for basis_i[p] * basis_j[q];
  // empty vector when i + j exceeds the dimension.
  RatVector mult_row(int i, std::size_t p, int j, std::size_t q) const;
  const RatMatrix& mult_table(int i, int j) const { return data_.mult[i][j]; }

  // Bilinear extension of the table on coefficient vectors.
  RatVector mul_coeffs(int i, const RatVector& x, int j,
                       const RatVector& y) const;

  // Poincare pairing matrix <x, y> = deg(x * y) between CH^i and CH^{d-i}.
  const RatMatrix& pairing(int i) const { return pairings_[i]; }

  Class basis_class(int codim, std::size_t index) const;
  Class zero_class(int codim) const;
  Class unit() const;
  Class make_class(int codim, RatVector coeffs) const;
  std::vector<std::pair<Class, Class>> kunneth_pairs() const;

 private:
  ChowDatum() = default;
  void validate() const;
  Data data_;
  std::vector<RatMatrix> pairings_;
};

// Pullback/pushforward pair for a morphism f: source -> target, with the
// projection-formula contract checked on all basis pairs at construction.
struct MorphismDatum {
  DatumPtr source, target;
  // pullback[i]: CH^i(target) -> CH^i(source), an n_tgt_i x n_src_i matrix
  // acting on coefficient row vectors.
  std::vector<RatMatrix> pullback;
  // pushforward[i]: CH^i(source) -> CH^{i-shift}(target).
  std::vector<RatMatrix> pushforward;
  Rational generic_degree;

  int codim_shift() const;
};

MorphismDatum make_morphism(DatumPtr source, DatumPtr target,
                            std::vector<RatMatrix> pullback,
                            std::vector<RatMatrix> pushforward,
                            Rational generic_degree);
MorphismDatum identity_morphism(DatumPtr x);
// g after h as maps of varieties: (f_outer o f_inner): source of inner ->
// target of outer; requires inner.target == outer.source.
MorphismDatum compose_morphisms(const MorphismDatum& outer,
                                const MorphismDatum& inner);

Class pullback(const MorphismDatum& f, const Class& y);
Class pushforward(const MorphismDatum& f, const Class& x);
Rational degree(const Class& x);

// Finite group acting by graded ring automorphisms; elements[g][i] is the
// action of g on CH^i as a matrix on coefficient rows.
struct GroupActionDatum {
  DatumPtr datum;
  std::vector<std::vector<RatMatrix>> elements;
};

GroupActionDatum make_action(DatumPtr datum,
                             std::vector<std::vector<RatMatrix>> elements);
GroupActionDatum trivial_action(DatumPtr datum);
// Factor exchange on a self-product datum (product_info.left == .right).
GroupActionDatum swap_action(DatumPtr square);

struct QuotientResult {
  DatumPtr datum;
  MorphismDatum projection;  // q: ambient -> quotient
};

// Invariant subalgebra with 1/|G|-renormalized degree map, plus the quotient
// morphism datum (pullback = inclusion, pushforward = |G| x averaging,
// generic degree |G|).
QuotientResult quotient(const GroupActionDatum& action);

DatumPtr projective_space(int n);
DatumPtr product(DatumPtr x, DatumPtr y);

// Checks that mats (one per codim, acting on coefficient rows of a) define a
// degree-preserving isomorphism of graded algebras a -> b.
bool is_graded_iso(const DatumPtr& a, const DatumPtr& b,
                   const std::vector<RatMatrix>& mats,
                   std::string* why = nullptr);

}  // namespace chowlift
