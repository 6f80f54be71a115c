#pragma once

#include <vector>

#include "chowlift/correspond.hpp"

namespace chowlift {

// Blow-up of a datum X at a degree-1 point class. The result Y carries the
// pulled-back ring plus exceptional classes e_1..e_{d-1} multiplying by
// e_i e_j = c e_{i+j}, with e_d identified with the pullback of the center.
struct BlowupDatum {
  DatumPtr base;
  Class center;
  Rational multiplier;
  DatumPtr result;
  MorphismDatum f;  // blow-down Y -> X, generic degree 1
  std::vector<Class> exceptional;  // e_1..e_{d-1} on the result

  // Index of e_i inside the codim-i basis of the result.
  std::size_t exceptional_index(int codim) const {
    return base->dim_ch(codim);
  }
};

BlowupDatum blow_up(const DatumPtr& x, const Class& center,
                    const Rational& multiplier);

// Splitting of CH^d(Y x Y) into the pulled-back part A and the exceptional
// ideal B: a_part = (f x f)^* (f x f)_* gamma, b_part the remainder.
struct ABSplit {
  Correspondence a_part;
  Correspondence b_part;
};

ABSplit split_AB(const BlowupDatum& b, const Correspondence& gamma);

// True when every product-cycle term carries an exceptional class in at
// least one factor.
bool in_B(const BlowupDatum& b, const Correspondence& gamma);

// sigma written as a class with exceptional left factors plus one with
// exceptional right factors; both stored on Y x Y.
struct TauPair {
  Correspondence tau1;
  Correspondence tau2;
};

// Placement of the doubly exceptional terms of sigma.
enum class TauRoute {
  HalfHalf,  // canonical: split evenly between tau1 and tau2
  SkewLeft,  // alternate: give them all to tau1
};

TauPair decompose_sigma(const BlowupDatum& b, const Correspondence& sigma,
                        TauRoute route = TauRoute::HalfHalf);

// Replace (tau1, tau2) by ((tau1 + tau2^t)/2, (tau1^t + tau2)/2); valid only
// when the reconstructed sigma is self-transpose.
TauPair symmetrize(const BlowupDatum& b, const TauPair& t);

// Exceptional projector candidates gamma_0..gamma_d extracted by bigraded
// type from the tau pair, normalized by the m_i in {0,1} dichotomy and the
// zeroing of the m_i = 0 indices.
std::vector<Correspondence> gammas(const BlowupDatum& b, const TauPair& t);

// Chow-Kunneth lift: rho_j = (f x f)^* pi_j, plus gamma_{d - j/2} for even j.
CKDecomposition lift_ck(const CKDecomposition& pis, const BlowupDatum& b,
                        TauRoute route = TauRoute::HalfHalf,
                        bool apply_symmetrize = true);

// Chow-Kunneth blow-down: pi_j = (f x f)_* nu_j.
CKDecomposition blowdown_ck(const CKDecomposition& nus, const BlowupDatum& b);

// Iterated point blow-ups with composed blow-down morphism and stagewise
// lift/lower.
struct BlowupTower {
  DatumPtr base;
  DatumPtr top;
  std::vector<BlowupDatum> stages;
  MorphismDatum total;  // top -> base

  CKDecomposition lift(const CKDecomposition& base_ck,
                       TauRoute route = TauRoute::HalfHalf,
                       bool apply_symmetrize = true) const;
  CKDecomposition lower(const CKDecomposition& top_ck) const;
};

// Centers are classes on the base; each stage blows up the pullback of the
// next center through the stages built so far.
BlowupTower blow_up_many(const DatumPtr& x, const std::vector<Class>& centers,
                         const Rational& multiplier);
BlowupTower blow_up_points(const DatumPtr& x, int count,
                           const Rational& multiplier);

// First basis class of the top graded piece with nonzero degree, scaled to
// degree 1.
Class default_point_class(const DatumPtr& x);

}  // namespace chowlift
