#include "chowlift/blowup.hpp"

#include <algorithm>

#include "chowlift/errors.hpp"

namespace chowlift {

namespace {

void check_on_result(const BlowupDatum& b, const Correspondence& gamma,
                     const char* what) {
  if (gamma.source() != b.result || gamma.target() != b.result)
    throw AmbientMismatchError(std::string(what) +
                               ": correspondence is not on the blow-up");
  if (gamma.codim() != b.result->dimension())
    throw AmbientMismatchError(std::string(what) +
                               ": correspondence codim must equal dim");
}

}  // namespace

BlowupDatum blow_up(const DatumPtr& x, const Class& center,
                    const Rational& multiplier) {
  const int d = x->dimension();
  if (d < 1)
    throw UnsupportedDatumError("blow-up needs dimension >= 1");
  if (!x->has_kunneth())
    throw UnsupportedDatumError("blow-up needs strong Kunneth data on " +
                                x->name());
  if (center.datum() != x || center.codim() != d)
    throw InvalidCenterError("center must be a codim-d class on the base");
  if (degree(center) != 1)
    throw InvalidCenterError("center must have degree 1, got " +
                             degree(center).get_str());
  if (multiplier == 0)
    throw DegenerateMultiplierError(
        "zero exceptional multiplier would degenerate the pairing");

  // Basis: pulled-back classes first, then e_i in codims 1..d-1.
  ChowDatum::Data data;
  data.dimension = d;
  data.basis.resize(d + 1);
  auto n_base = [&](int i) { return x->dim_ch(i); };
  auto has_e = [&](int i) { return i >= 1 && i <= d - 1; };
  for (int i = 0; i <= d; ++i) {
    for (const auto& label : x->labels(i)) data.basis[i].push_back("f*" + label);
    if (has_e(i)) data.basis[i].push_back("e_" + std::to_string(i));
  }
  auto dim_y = [&](int i) { return n_base(i) + (has_e(i) ? 1 : 0); };

  // e_i e_j lands on e_{i+j}, with e_d read as the pullback of the center.
  auto e_times_e = [&](int k) {  // coefficients of c * e_k in codim k
    RatVector v(dim_y(k));
    if (k <= d - 1) {
      v[n_base(k)] = multiplier;
    } else {
      for (std::size_t t = 0; t < n_base(d); ++t)
        v[t] = multiplier * center.coeffs()[t];
    }
    return v;
  };

  data.mult.assign(d + 1, std::vector<RatMatrix>(d + 1));
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      RatMatrix table(dim_y(i) * dim_y(j), dim_y(i + j));
      for (std::size_t p = 0; p < dim_y(i); ++p)
        for (std::size_t q = 0; q < dim_y(j); ++q) {
          const bool pe = has_e(i) && p == n_base(i);
          const bool qe = has_e(j) && q == n_base(j);
          RatVector row(dim_y(i + j));
          if (!pe && !qe) {
            const RatVector base_row = x->mult_row(i, p, j, q);
            for (std::size_t t = 0; t < base_row.size(); ++t)
              row[t] = base_row[t];
          } else if (pe && qe) {
            row = e_times_e(i + j);
          } else {
            // f^*x e_k = (codim-0 coefficient of x) e_k.
            const int other = pe ? j : i;
            if (other == 0) row[n_base(i + j)] = 1;
          }
          table.set_row(p * dim_y(j) + q, row);
        }
      data.mult[i][j] = table;
    }

  data.degree.resize(dim_y(d));
  for (std::size_t t = 0; t < n_base(d); ++t)
    data.degree[t] = x->degree_vector()[t];

  // Kunneth data: pulled-back pairs plus ((1/c) e_i, e_{d-i}).
  for (const auto& kp : x->kunneth_raw()) {
    KunnethPairRaw nkp;
    nkp.lambda_codim = kp.lambda_codim;
    nkp.lambda.resize(dim_y(kp.lambda_codim));
    for (std::size_t t = 0; t < kp.lambda.size(); ++t)
      nkp.lambda[t] = kp.lambda[t];
    nkp.mu.resize(dim_y(d - kp.lambda_codim));
    for (std::size_t t = 0; t < kp.mu.size(); ++t) nkp.mu[t] = kp.mu[t];
    data.kunneth.push_back(std::move(nkp));
  }
  for (int i = 1; i <= d - 1; ++i) {
    KunnethPairRaw ekp;
    ekp.lambda_codim = i;
    ekp.lambda.resize(dim_y(i));
    ekp.lambda[n_base(i)] = 1 / multiplier;
    ekp.mu.resize(dim_y(d - i));
    ekp.mu[n_base(d - i)] = 1;
    data.kunneth.push_back(std::move(ekp));
  }
  data.has_kunneth = true;
  data.cellular = x->cellular();
  data.name = "Bl(" + x->name() + ")";

  DatumPtr y = ChowDatum::create(std::move(data));

  std::vector<RatMatrix> pb(d + 1), pf(d + 1);
  for (int i = 0; i <= d; ++i) {
    RatMatrix in(n_base(i), dim_y(i));
    RatMatrix out(dim_y(i), n_base(i));
    for (std::size_t p = 0; p < n_base(i); ++p) {
      in.at(p, p) = 1;
      out.at(p, p) = 1;
    }
    pb[i] = in;
    pf[i] = out;
  }
  MorphismDatum f = make_morphism(y, x, pb, pf, 1);

  std::vector<Class> exceptional;
  for (int i = 1; i <= d - 1; ++i)
    exceptional.push_back(y->basis_class(i, n_base(i)));

  return BlowupDatum{x, center, multiplier, y, std::move(f),
                     std::move(exceptional)};
}

ABSplit split_AB(const BlowupDatum& b, const Correspondence& gamma) {
  check_on_result(b, gamma, "split_AB");
  Correspondence a_part = corr_pullback(b.f, corr_pushforward(b.f, gamma));
  Correspondence b_part = gamma - a_part;
  return ABSplit{std::move(a_part), std::move(b_part)};
}

bool in_B(const BlowupDatum& b, const Correspondence& gamma) {
  check_on_result(b, gamma, "in_B");
  for (int i = gamma.block_min(); i <= gamma.block_max(); ++i) {
    const RatMatrix m = gamma.block(i);
    const std::size_t pe = b.base->dim_ch(i);
    const std::size_t qe = b.base->dim_ch(gamma.codim() - i);
    for (std::size_t p = 0; p < std::min(pe, m.rows()); ++p)
      for (std::size_t q = 0; q < std::min(qe, m.cols()); ++q)
        if (m.at(p, q) != 0) return false;
  }
  return true;
}

TauPair decompose_sigma(const BlowupDatum& b, const Correspondence& sigma,
                        TauRoute route) {
  check_on_result(b, sigma, "decompose_sigma");
  if (!in_B(b, sigma))
    throw NotInBError(
        "sigma carries a product-cycle term without exceptional factors");
  const int d = b.result->dimension();
  Correspondence tau1 = Correspondence::zero(b.result, b.result, d);
  Correspondence tau2 = Correspondence::zero(b.result, b.result, d);
  for (int i = sigma.block_min(); i <= sigma.block_max(); ++i) {
    const RatMatrix m = sigma.block(i);
    if (m.is_zero()) continue;
    const int j = d - i;
    const std::size_t pe = b.base->dim_ch(i);  // e_i row index, when present
    const std::size_t qe = b.base->dim_ch(j);
    RatMatrix m1(m.rows(), m.cols()), m2(m.rows(), m.cols());
    for (std::size_t p = 0; p < m.rows(); ++p)
      for (std::size_t q = 0; q < m.cols(); ++q) {
        if (m.at(p, q) == 0) continue;
        const bool left_exceptional = (p == pe);
        const bool right_exceptional = (q == qe);
        if (left_exceptional && right_exceptional) {
          if (route == TauRoute::HalfHalf) {
            m1.at(p, q) = m.at(p, q) / 2;
            m2.at(p, q) = m.at(p, q) / 2;
          } else {
            m1.at(p, q) = m.at(p, q);
          }
        } else if (left_exceptional) {
          m1.at(p, q) = m.at(p, q);
        } else {
          m2.at(p, q) = m.at(p, q);
        }
      }
    tau1.add_to_block(i, m1);
    tau2.add_to_block(i, m2);
  }
  return TauPair{std::move(tau1), std::move(tau2)};
}

TauPair symmetrize(const BlowupDatum& b, const TauPair& t) {
  check_on_result(b, t.tau1, "symmetrize");
  check_on_result(b, t.tau2, "symmetrize");
  const Rational half = rat(1, 2);
  const Correspondence sigma = t.tau1 + t.tau2;
  TauPair out{(t.tau1 + t.tau2.transpose()).scaled(half),
              (t.tau1.transpose() + t.tau2).scaled(half)};
  if (!(out.tau1 + out.tau2 == sigma))
    throw InconsistentTauError(
        "symmetrized pair does not reconstruct sigma (sigma is not "
        "self-transpose)");
  return out;
}

std::vector<Correspondence> gammas(const BlowupDatum& b, const TauPair& t) {
  check_on_result(b, t.tau1, "gammas");
  check_on_result(b, t.tau2, "gammas");
  const int d = b.result->dimension();
  const Correspondence sigma = t.tau1 + t.tau2;

  // gamma_i = eta_i + theta_i is the type (i, d-i) part of sigma.
  std::vector<Correspondence> out;
  for (int i = 0; i <= d; ++i) {
    Correspondence g = Correspondence::zero(b.result, b.result, d);
    if (i >= sigma.block_min() && i <= sigma.block_max()) {
      const RatMatrix m = sigma.block(i);
      if (!m.is_zero()) g.set_block(i, m);
    }
    out.push_back(std::move(g));
  }

  // Each gamma composes with itself to m_i gamma_i with m_i in {0, 1}.
  std::vector<int> zero_index;
  Correspondence zero_sum = Correspondence::zero(b.result, b.result, d);
  for (int i = 0; i <= d; ++i) {
    if (out[i].is_zero()) {
      zero_index.push_back(i);
      continue;
    }
    const Correspondence sq = compose(out[i], out[i]);
    Rational m;
    bool found = false;
    const RatMatrix gb = out[i].block(i);
    const RatMatrix sb = sq.block(i);
    for (std::size_t p = 0; p < gb.rows() && !found; ++p)
      for (std::size_t q = 0; q < gb.cols() && !found; ++q)
        if (gb.at(p, q) != 0) {
          m = sb.at(p, q) / gb.at(p, q);
          found = true;
        }
    if (!found || !(sq == out[i].scaled(m)))
      throw ConstructionViolationError(
          "gamma_" + std::to_string(i) +
          " does not compose to a multiple of itself; input was not a valid "
          "sigma");
    if (m != 0 && m != 1)
      throw ConstructionViolationError(
          "gamma_" + std::to_string(i) + " has multiplier " + m.get_str() +
          " outside {0,1}; input was not a valid sigma");
    if (m == 0) {
      zero_index.push_back(i);
      zero_sum = zero_sum + out[i];
    }
  }
  if (!zero_sum.is_zero())
    throw ConstructionViolationError(
        "zeroed gamma terms do not sum to zero; input was not a valid sigma");
  for (int i : zero_index) out[i] = Correspondence::zero(b.result, b.result, d);

  // Guard: the list must reassemble sigma as orthogonal idempotents.
  if (!(sum(out) == sigma))
    throw ConstructionViolationError("gamma list does not sum to sigma");
  for (int i = 0; i <= d; ++i) {
    if (!out[i].is_zero() && !is_idempotent(out[i]))
      throw ConstructionViolationError("gamma_" + std::to_string(i) +
                                       " is not idempotent");
    for (int j = i + 1; j <= d; ++j)
      if (!compose(out[i], out[j]).is_zero() ||
          !compose(out[j], out[i]).is_zero())
        throw ConstructionViolationError("gamma_" + std::to_string(i) +
                                         " and gamma_" + std::to_string(j) +
                                         " are not orthogonal");
  }
  return out;
}

CKDecomposition lift_ck(const CKDecomposition& pis, const BlowupDatum& b,
                        TauRoute route, bool apply_symmetrize) {
  if (pis.datum != b.base)
    throw AmbientMismatchError("lift_ck: decomposition is not on the base");
  const int d = b.base->dimension();
  const Correspondence sigma =
      diagonal(b.result) - corr_pullback(b.f, sum(pis.projectors));
  TauPair t = decompose_sigma(b, sigma, route);
  if (apply_symmetrize) t = symmetrize(b, t);
  const std::vector<Correspondence> g = gammas(b, t);

  std::vector<Correspondence> rhos;
  for (int j = 0; j <= 2 * d; ++j) {
    Correspondence rho = corr_pullback(b.f, pis.projectors[j]);
    if (j % 2 == 0) rho = rho + g[d - j / 2];
    rhos.push_back(std::move(rho));
  }
  return make_ck(b.result, std::move(rhos));
}

CKDecomposition blowdown_ck(const CKDecomposition& nus, const BlowupDatum& b) {
  if (nus.datum != b.result)
    throw AmbientMismatchError(
        "blowdown_ck: decomposition is not on the blow-up");
  std::vector<Correspondence> pis;
  for (const auto& nu : nus.projectors)
    pis.push_back(corr_pushforward(b.f, nu));
  return make_ck(b.base, std::move(pis));
}

CKDecomposition BlowupTower::lift(const CKDecomposition& base_ck,
                                  TauRoute route, bool apply_symmetrize) const {
  CKDecomposition ck = base_ck;
  for (const auto& stage : stages)
    ck = lift_ck(ck, stage, route, apply_symmetrize);
  return ck;
}

CKDecomposition BlowupTower::lower(const CKDecomposition& top_ck) const {
  CKDecomposition ck = top_ck;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it)
    ck = blowdown_ck(ck, *it);
  return ck;
}

BlowupTower blow_up_many(const DatumPtr& x, const std::vector<Class>& centers,
                         const Rational& multiplier) {
  BlowupTower tower{x, x, {}, identity_morphism(x)};
  for (const auto& center : centers) {
    if (center.datum() != x)
      throw InvalidCenterError("centers must be classes on the base");
    // Pull the center through the stages built so far; pullback preserves
    // the degree of point classes.
    Class staged = center;
    for (const auto& stage : tower.stages) staged = pullback(stage.f, staged);
    BlowupDatum stage = blow_up(tower.top, staged, multiplier);
    tower.total = compose_morphisms(tower.total, stage.f);
    tower.top = stage.result;
    tower.stages.push_back(std::move(stage));
  }
  return tower;
}

BlowupTower blow_up_points(const DatumPtr& x, int count,
                           const Rational& multiplier) {
  std::vector<Class> centers(static_cast<std::size_t>(count),
                             default_point_class(x));
  return blow_up_many(x, centers, multiplier);
}

Class default_point_class(const DatumPtr& x) {
  const int d = x->dimension();
  for (std::size_t t = 0; t < x->dim_ch(d); ++t)
    if (x->degree_vector()[t] != 0)
      return x->basis_class(d, t).scaled(1 / x->degree_vector()[t]);
  throw InvalidCenterError("datum has no degree-1 point class");
}

}  // namespace chowlift
