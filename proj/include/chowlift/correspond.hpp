#pragma once

#include <map>
#include <string>
#include <vector>

#include "chowlift/chowring.hpp"

namespace chowlift {

// Correspondence between two data: an element of CH^c(X x Y) stored as
// bigraded product-cycle blocks. Block i is the (codim-i on X, codim-(c-i)
// on Y) piece, a dim CH^i(X) by dim CH^{c-i}(Y) coefficient matrix; absent
// blocks are zero.
class Correspondence {
 public:
  Correspondence() = default;

  static Correspondence zero(DatumPtr source, DatumPtr target, int codim);
  // u x v with u on the source and v on the target.
  static Correspondence product_cycle(const Class& u, const Class& v);

  const DatumPtr& source() const { return source_; }
  const DatumPtr& target() const { return target_; }
  int codim() const { return codim_; }

  int block_min() const;
  int block_max() const;
  bool has_block(int i) const { return blocks_.count(i) != 0; }
  // Materialized copy of block i (zero matrix when absent).
  RatMatrix block(int i) const;
  void add_to_block(int i, const RatMatrix& m);
  void set_block(int i, RatMatrix m);

  bool is_zero() const;
  Correspondence transpose() const;
  Correspondence scaled(const Rational& s) const;

  friend Correspondence operator+(const Correspondence& a,
                                  const Correspondence& b);
  friend Correspondence operator-(const Correspondence& a,
                                  const Correspondence& b);
  friend bool operator==(const Correspondence& a, const Correspondence& b);

  std::string str() const;

 private:
  DatumPtr source_, target_;
  int codim_ = 0;
  std::map<int, RatMatrix> blocks_;
};

// Composition left • right of right: X -> Y and left: Y -> Z through the
// product-cycle pairing formula: (u x v) • (a x b) = deg(b·u) (a x v).
Correspondence compose(const Correspondence& left, const Correspondence& right);

// Independent route for compose: expand both operands in the Kunneth basis
// of the triple product X x Y x Z, multiply there, and integrate the middle
// factor with the degree map. Test oracle only; the triple-product datum is
// built once per oracle.
class ComposeOracle {
 public:
  ComposeOracle(DatumPtr x, DatumPtr y, DatumPtr z);
  Correspondence compose(const Correspondence& left,
                         const Correspondence& right) const;
  const DatumPtr& triple() const { return triple_; }

 private:
  DatumPtr x_, y_, z_;
  DatumPtr pair_;    // X x Y
  DatumPtr triple_;  // (X x Y) x Z
};

Correspondence compose_oracle(const Correspondence& left,
                              const Correspondence& right);

// Covariant action on classes: (u x v) acting on y gives deg(y·u) v.
Class act(const Correspondence& alpha, const Class& x);

// Diagonal correspondence from the strong Kunneth data.
Correspondence diagonal(const DatumPtr& x);

// Factorwise pullback/pushforward along f on both tensor slots.
Correspondence corr_pullback(const MorphismDatum& f, const Correspondence& a);
Correspondence corr_pushforward(const MorphismDatum& f,
                                const Correspondence& a);

bool is_idempotent(const Correspondence& a);
bool are_orthogonal(const Correspondence& a, const Correspondence& b);

// External tensor of a: X1 -> Y1 and b: X2 -> Y2 as a correspondence between
// the given product data (X1 x X2) -> (Y1 x Y2).
Correspondence corr_tensor(const Correspondence& a, const Correspondence& b,
                           const DatumPtr& source_prod,
                           const DatumPtr& target_prod);

// Ordered list of 2d+1 projector candidates on datum x datum.
struct CKDecomposition {
  DatumPtr datum;
  std::vector<Correspondence> projectors;
};

CKDecomposition make_ck(DatumPtr datum, std::vector<Correspondence> projectors);

// Type-block split of the diagonal: the canonical decomposition carried by
// every datum with strong Kunneth data.
CKDecomposition standard_ck(const DatumPtr& datum);

// Tensor of two decompositions on the given product datum.
CKDecomposition ck_tensor(const CKDecomposition& a, const CKDecomposition& b,
                          const DatumPtr& prod);

// Descend a decomposition along a quotient morphism q of degree |G|:
// each projector maps to (1/|G|) (q x q)_* of the ambient one.
CKDecomposition ck_quotient(const CKDecomposition& ambient,
                            const MorphismDatum& q);

Correspondence sum(const std::vector<Correspondence>& list);

}  // namespace chowlift
