#include "chowlift/chowring.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "chowlift/errors.hpp"
#include "chowlift/parallel.hpp"

namespace chowlift {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConstructionViolationError(msg);
}

}  // namespace

// ---------------------------------------------------------------- Class

Class::Class(DatumPtr datum, int codim, RatVector coeffs)
    : datum_(std::move(datum)), codim_(codim), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != datum_->dim_ch(codim_))
    throw AmbientMismatchError("class coefficient length " +
                               std::to_string(coeffs_.size()) +
                               " does not match CH^" + std::to_string(codim_) +
                               " of " + datum_->name());
}

Rational Class::codim0_coefficient() const {
  if (codim_ != 0 || coeffs_.empty()) return 0;
  return coeffs_[0];
}

bool operator==(const Class& a, const Class& b) {
  return a.datum_ == b.datum_ && a.codim_ == b.codim_ && a.coeffs_ == b.coeffs_;
}

Class operator+(const Class& a, const Class& b) {
  if (a.datum_ != b.datum_ || a.codim_ != b.codim_)
    throw AmbientMismatchError("class addition on mismatched pieces");
  return Class(a.datum_, a.codim_, vec_add(a.coeffs_, b.coeffs_));
}

Class operator-(const Class& a, const Class& b) {
  if (a.datum_ != b.datum_ || a.codim_ != b.codim_)
    throw AmbientMismatchError("class subtraction on mismatched pieces");
  return Class(a.datum_, a.codim_, vec_sub(a.coeffs_, b.coeffs_));
}

Class operator*(const Class& a, const Class& b) {
  if (a.datum_ != b.datum_)
    throw AmbientMismatchError("intersection product across different data");
  return Class(a.datum_, a.codim_ + b.codim_,
               a.datum_->mul_coeffs(a.codim_, a.coeffs_, b.codim_, b.coeffs_));
}

Class Class::scaled(const Rational& s) const {
  return Class(datum_, codim_, vec_scale(coeffs_, s));
}

std::string Class::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[i].get_str() << "*" << datum_->labels(codim_)[i];
    first = false;
  }
  if (first) os << "0";
  os << " (codim " << codim_ << ")";
  return os.str();
}

// ---------------------------------------------------------- ProductInfo

std::size_t ProductInfo::index(int left_codim, std::size_t left_index,
                               int right_codim, std::size_t right_index) const {
  const int k = left_codim + right_codim;
  const std::ptrdiff_t base = offsets[k][left_codim];
  if (base < 0) throw AmbientMismatchError("empty product basis group");
  return static_cast<std::size_t>(base) +
         left_index * right->dim_ch(right_codim) + right_index;
}

ProductInfo::Split ProductInfo::split(int codim, std::size_t flat_index) const {
  for (int i = 0; i <= codim; ++i) {
    if (offsets[codim][i] < 0) continue;
    const std::size_t base = static_cast<std::size_t>(offsets[codim][i]);
    const std::size_t group =
        left->dim_ch(i) * right->dim_ch(codim - i);
    if (flat_index >= base && flat_index < base + group) {
      const std::size_t rel = flat_index - base;
      const std::size_t nr = right->dim_ch(codim - i);
      return Split{i, rel / nr, codim - i, rel % nr};
    }
  }
  throw AmbientMismatchError("product basis index out of range");
}

// ------------------------------------------------------------ ChowDatum

DatumPtr ChowDatum::create(Data data) {
  auto datum = std::shared_ptr<ChowDatum>(new ChowDatum());
  datum->data_ = std::move(data);

  const auto& d = datum->data_;
  require(d.dimension >= 0, "negative dimension");
  require(static_cast<int>(d.basis.size()) == d.dimension + 1,
          "graded basis must have dimension+1 pieces");
  require(d.basis[0].size() == 1, "codim-0 piece must be one-dimensional");
  require(d.degree.size() == d.basis[d.dimension].size(),
          "degree map length mismatch");
  require(static_cast<int>(d.mult.size()) >= d.dimension + 1,
          "mult table missing rows");
  for (int i = 0; i <= d.dimension; ++i)
    for (int j = 0; i + j <= d.dimension; ++j) {
      const RatMatrix& t = d.mult[i][j];
      require(t.rows() == datum->dim_ch(i) * datum->dim_ch(j) &&
                  t.cols() == datum->dim_ch(i + j),
              "mult table shape mismatch at (" + std::to_string(i) + "," +
                  std::to_string(j) + ")");
    }

  // Poincare pairing matrices, needed by validate() and by correspondences.
  datum->pairings_.resize(d.dimension + 1);
  for (int i = 0; i <= d.dimension; ++i) {
    const std::size_t ni = datum->dim_ch(i);
    const std::size_t nj = datum->dim_ch(d.dimension - i);
    RatMatrix p(ni, nj);
    for (std::size_t a = 0; a < ni; ++a)
      for (std::size_t b = 0; b < nj; ++b)
        p.at(a, b) =
            dot(datum->mult_row(i, a, d.dimension - i, b), d.degree);
    datum->pairings_[i] = p;
  }

  datum->validate();
  return datum;
}

RatVector ChowDatum::mult_row(int i, std::size_t p, int j,
                              std::size_t q) const {
  if (i + j > data_.dimension) return {};
  const RatMatrix& t = data_.mult[i][j];
  RatVector out(t.cols());
  const std::size_t row = p * dim_ch(j) + q;
  for (std::size_t c = 0; c < t.cols(); ++c) out[c] = t.at(row, c);
  return out;
}

RatVector ChowDatum::mul_coeffs(int i, const RatVector& x, int j,
                                const RatVector& y) const {
  RatVector out(dim_ch(i + j));
  if (out.empty()) return out;
  const RatMatrix& t = data_.mult[i][j];
  const std::size_t nj = dim_ch(j);
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x[p] == 0) continue;
    for (std::size_t q = 0; q < y.size(); ++q) {
      if (y[q] == 0) continue;
      const Rational s = x[p] * y[q];
      const std::size_t row = p * nj + q;
      for (std::size_t c = 0; c < t.cols(); ++c) {
        const Rational& e = t.at(row, c);
        if (e != 0) out[c] += s * e;
      }
    }
  }
  return out;
}

Class ChowDatum::basis_class(int codim, std::size_t index) const {
  RatVector v(dim_ch(codim));
  v[index] = 1;
  return Class(shared_from_this(), codim, std::move(v));
}

Class ChowDatum::zero_class(int codim) const {
  return Class(shared_from_this(), codim, RatVector(dim_ch(codim)));
}

Class ChowDatum::unit() const { return basis_class(0, 0); }

Class ChowDatum::make_class(int codim, RatVector coeffs) const {
  return Class(shared_from_this(), codim, std::move(coeffs));
}

std::vector<std::pair<Class, Class>> ChowDatum::kunneth_pairs() const {
  std::vector<std::pair<Class, Class>> out;
  for (const auto& kp : data_.kunneth)
    out.emplace_back(make_class(kp.lambda_codim, kp.lambda),
                     make_class(data_.dimension - kp.lambda_codim, kp.mu));
  return out;
}

void ChowDatum::validate() const {
  const int d = data_.dimension;

  // Unit is a two-sided identity (commutativity makes one side enough, but
  // both are cheap).
  for (int j = 0; j <= d; ++j)
    for (std::size_t q = 0; q < dim_ch(j); ++q) {
      RatVector e(dim_ch(j));
      e[q] = 1;
      require(mult_row(0, 0, j, q) == e, "unit is not a left identity on " +
                                             data_.basis[j][q]);
      require(mult_row(j, q, 0, 0) == e, "unit is not a right identity on " +
                                             data_.basis[j][q]);
    }

  // Global basis enumeration for the pair/triple sweeps.
  std::vector<std::pair<int, std::size_t>> gb;
  for (int i = 0; i <= d; ++i)
    for (std::size_t p = 0; p < dim_ch(i); ++p) gb.emplace_back(i, p);

  for (std::size_t a = 0; a < gb.size(); ++a)
    for (std::size_t b = a + 1; b < gb.size(); ++b) {
      const auto [ia, pa] = gb[a];
      const auto [ib, pb] = gb[b];
      require(mult_row(ia, pa, ib, pb) == mult_row(ib, pb, ia, pa),
              "multiplication not commutative on " + data_.basis[ia][pa] +
                  ", " + data_.basis[ib][pb]);
    }

  // Associativity on all basis triples; the sweep is data-parallel with a
  // deterministic witness (first failing outer index wins).
  std::vector<std::string> failures(gb.size());
  parallel_for(gb.size(), [&](std::size_t a) {
    const auto [ia, pa] = gb[a];
    for (std::size_t b = 0; b < gb.size(); ++b) {
      const auto [ib, pb] = gb[b];
      const RatVector ab = mult_row(ia, pa, ib, pb);
      for (std::size_t c = 0; c < gb.size(); ++c) {
        const auto [ic, pc] = gb[c];
        if (ia + ib + ic > d) continue;
        RatVector basis_c(dim_ch(ic));
        basis_c[pc] = 1;
        const RatVector lhs = mul_coeffs(ia + ib, ab, ic, basis_c);
        const RatVector bc = mult_row(ib, pb, ic, pc);
        RatVector basis_a(dim_ch(ia));
        basis_a[pa] = 1;
        const RatVector rhs = mul_coeffs(ia, basis_a, ib + ic, bc);
        if (lhs != rhs) {
          failures[a] = "multiplication not associative on " +
                        data_.basis[ia][pa] + ", " + data_.basis[ib][pb] +
                        ", " + data_.basis[ic][pc];
          return;
        }
      }
    }
  });
  for (const auto& f : failures) require(f.empty(), f);

  if (!data_.has_kunneth) return;

  // Kunneth pair shapes.
  for (const auto& kp : data_.kunneth) {
    require(kp.lambda_codim >= 0 && kp.lambda_codim <= d,
            "Kunneth pair codim out of range");
    require(kp.lambda.size() == dim_ch(kp.lambda_codim) &&
                kp.mu.size() == dim_ch(d - kp.lambda_codim),
            "Kunneth pair coefficient length mismatch");
  }

  // Nondegenerate pairing in every codimension.
  for (int i = 0; i <= d; ++i) {
    require(dim_ch(i) == dim_ch(d - i),
            "pairing not square between codim " + std::to_string(i) + " and " +
                std::to_string(d - i));
    require(rank(pairings_[i]) == dim_ch(i),
            "degenerate Poincare pairing in codim " + std::to_string(i));
  }

  // The diagonal assembled from the Kunneth data acts as the identity:
  // sum over pairs of deg(x * lambda) mu equals x for every basis class x.
  for (int j = 0; j <= d; ++j)
    for (std::size_t q = 0; q < dim_ch(j); ++q) {
      RatVector x(dim_ch(j));
      x[q] = 1;
      RatVector acc(dim_ch(j));
      for (const auto& kp : data_.kunneth) {
        if (kp.lambda_codim != d - j) continue;
        const Rational w =
            dot(mul_coeffs(j, x, d - j, kp.lambda), data_.degree);
        if (w != 0) acc = vec_add(acc, vec_scale(kp.mu, w));
      }
      require(acc == x, "Kunneth diagonal does not act as identity on " +
                            data_.basis[j][q]);
    }
}

// --------------------------------------------------------- morphism data

int MorphismDatum::codim_shift() const {
  return source->dimension() - target->dimension();
}

MorphismDatum make_morphism(DatumPtr source, DatumPtr target,
                            std::vector<RatMatrix> pullback,
                            std::vector<RatMatrix> pushforward,
                            Rational generic_degree) {
  MorphismDatum f{std::move(source), std::move(target), std::move(pullback),
                  std::move(pushforward), std::move(generic_degree)};
  const int ds = f.source->dimension();
  const int dt = f.target->dimension();
  const int shift = ds - dt;
  require(static_cast<int>(f.pullback.size()) == dt + 1,
          "pullback must cover every codim of the target");
  require(static_cast<int>(f.pushforward.size()) == ds + 1,
          "pushforward must cover every codim of the source");
  for (int i = 0; i <= dt; ++i)
    require(f.pullback[i].rows() == f.target->dim_ch(i) &&
                f.pullback[i].cols() == f.source->dim_ch(i),
            "pullback shape mismatch at codim " + std::to_string(i));
  for (int i = 0; i <= ds; ++i)
    require(f.pushforward[i].rows() == f.source->dim_ch(i) &&
                f.pushforward[i].cols() == f.target->dim_ch(i - shift),
            "pushforward shape mismatch at codim " + std::to_string(i));

  // Pullback is a ring homomorphism taking unit to unit.
  require(f.pullback[0].at(0, 0) == 1, "pullback does not preserve the unit");
  for (int i = 0; i <= dt; ++i)
    for (std::size_t p = 0; p < f.target->dim_ch(i); ++p)
      for (int j = i; i + j <= dt || i + j <= ds; ++j)
        for (std::size_t q = 0; j <= dt && q < f.target->dim_ch(j); ++q) {
          if (i + j > ds) continue;
          RatVector xy = f.target->mult_row(i, p, j, q);
          RatVector lhs = i + j <= dt
                              ? vec_matrix(xy, f.pullback[i + j])
                              : RatVector(f.source->dim_ch(i + j));
          RatVector px(f.target->dim_ch(i));
          px[p] = 1;
          RatVector qx(f.target->dim_ch(j));
          qx[q] = 1;
          RatVector rhs = f.source->mul_coeffs(i, vec_matrix(px, f.pullback[i]),
                                               j, vec_matrix(qx, f.pullback[j]));
          require(lhs == rhs, "pullback is not a ring homomorphism on " +
                                  f.target->labels(i)[p] + ", " +
                                  f.target->labels(j)[q]);
        }

  // Projection formula on all basis pairs.
  for (int i = 0; i <= ds; ++i)
    for (std::size_t p = 0; p < f.source->dim_ch(i); ++p)
      for (int j = 0; j <= dt; ++j)
        for (std::size_t q = 0; q < f.target->dim_ch(j); ++q) {
          RatVector x(f.source->dim_ch(i));
          x[p] = 1;
          RatVector y(f.target->dim_ch(j));
          y[q] = 1;
          const RatVector fy = vec_matrix(y, f.pullback[j]);
          const RatVector prod = f.source->mul_coeffs(j, fy, i, x);
          RatVector lhs =
              i + j <= ds ? vec_matrix(prod, f.pushforward[i + j])
                          : RatVector(f.target->dim_ch(i + j - shift));
          const RatVector fx = vec_matrix(x, f.pushforward[i]);
          const RatVector rhs = f.target->mul_coeffs(j, y, i - shift, fx);
          require(lhs == rhs, "projection formula fails on " +
                                  f.source->labels(i)[p] + ", " +
                                  f.target->labels(j)[q]);
        }

  // pushforward o pullback = m * identity in equal dimensions.
  if (shift == 0) {
    for (int i = 0; i <= dt; ++i) {
      const RatMatrix comp = f.pullback[i] * f.pushforward[i];
      require(comp == RatMatrix::identity(f.target->dim_ch(i))
                          .scaled(f.generic_degree),
              "pushforward o pullback is not m * identity at codim " +
                  std::to_string(i));
    }
  }

  // Proper pushforward preserves the degree of top-codimension classes.
  for (std::size_t p = 0; p < f.source->dim_ch(ds); ++p) {
    RatVector x(f.source->dim_ch(ds));
    x[p] = 1;
    require(dot(vec_matrix(x, f.pushforward[ds]), f.target->degree_vector()) ==
                dot(x, f.source->degree_vector()),
            "pushforward does not preserve degree");
  }
  return f;
}

MorphismDatum identity_morphism(DatumPtr x) {
  std::vector<RatMatrix> id;
  for (int i = 0; i <= x->dimension(); ++i)
    id.push_back(RatMatrix::identity(x->dim_ch(i)));
  return make_morphism(x, x, id, id, 1);
}

MorphismDatum compose_morphisms(const MorphismDatum& outer,
                                const MorphismDatum& inner) {
  if (inner.target != outer.source)
    throw AmbientMismatchError("morphism composition: data do not chain");
  const int dt = outer.target->dimension();
  const int ds = inner.source->dimension();
  const int shift_inner = inner.codim_shift();
  std::vector<RatMatrix> pb(dt + 1), pf(ds + 1);
  for (int i = 0; i <= dt; ++i) pb[i] = outer.pullback[i] * inner.pullback[i];
  for (int i = 0; i <= ds; ++i) {
    const int mid = i - shift_inner;
    if (mid >= 0 && mid <= outer.source->dimension())
      pf[i] = inner.pushforward[i] * outer.pushforward[mid];
    else
      pf[i] = RatMatrix(inner.source->dim_ch(i), 0);
  }
  return make_morphism(inner.source, outer.target, pb, pf,
                       outer.generic_degree * inner.generic_degree);
}

Class pullback(const MorphismDatum& f, const Class& y) {
  if (y.datum() != f.target)
    throw AmbientMismatchError("pullback: class does not live on the target");
  const int i = y.codim();
  if (i < 0 || i > f.target->dimension()) return f.source->zero_class(i);
  return f.source->make_class(i, vec_matrix(y.coeffs(), f.pullback[i]));
}

Class pushforward(const MorphismDatum& f, const Class& x) {
  if (x.datum() != f.source)
    throw AmbientMismatchError(
        "pushforward: class does not live on the source");
  const int i = x.codim();
  const int out = i - f.codim_shift();
  if (i < 0 || i > f.source->dimension()) return f.target->zero_class(out);
  return f.target->make_class(out, vec_matrix(x.coeffs(), f.pushforward[i]));
}

Rational degree(const Class& x) {
  if (x.codim() != x.datum()->dimension()) return 0;
  return dot(x.coeffs(), x.datum()->degree_vector());
}

// --------------------------------------------------------- group actions

GroupActionDatum make_action(DatumPtr datum,
                             std::vector<std::vector<RatMatrix>> elements) {
  GroupActionDatum a{std::move(datum), std::move(elements)};
  const int d = a.datum->dimension();
  if (a.elements.empty())
    throw InvalidActionError("group action needs at least the identity");
  for (const auto& g : a.elements) {
    if (static_cast<int>(g.size()) != d + 1)
      throw InvalidActionError("group element must act on every codim");
    for (int i = 0; i <= d; ++i) {
      if (g[i].rows() != a.datum->dim_ch(i) || g[i].cols() != a.datum->dim_ch(i))
        throw InvalidActionError("group element matrix shape mismatch");
      if (rank(g[i]) != a.datum->dim_ch(i))
        throw InvalidActionError("group element is not invertible");
    }
    // Ring automorphism preserving unit and degree.
    RatVector unit_row(1);
    unit_row[0] = 1;
    if (vec_matrix(unit_row, g[0]) != unit_row)
      throw InvalidActionError("group element does not fix the unit");
    for (std::size_t p = 0; p < a.datum->dim_ch(d); ++p) {
      RatVector x(a.datum->dim_ch(d));
      x[p] = 1;
      if (dot(vec_matrix(x, g[d]), a.datum->degree_vector()) !=
          dot(x, a.datum->degree_vector()))
        throw InvalidActionError("group element does not preserve degree");
    }
    for (int i = 0; i <= d; ++i)
      for (std::size_t p = 0; p < a.datum->dim_ch(i); ++p)
        for (int j = 0; i + j <= d; ++j)
          for (std::size_t q = 0; q < a.datum->dim_ch(j); ++q) {
            const RatVector lhs =
                vec_matrix(a.datum->mult_row(i, p, j, q), g[i + j]);
            RatVector x(a.datum->dim_ch(i));
            x[p] = 1;
            RatVector y(a.datum->dim_ch(j));
            y[q] = 1;
            const RatVector rhs = a.datum->mul_coeffs(
                i, vec_matrix(x, g[i]), j, vec_matrix(y, g[j]));
            if (lhs != rhs)
              throw InvalidActionError(
                  "group element is not a ring automorphism");
          }
  }
  // Identity present and closure under composition.
  auto is_identity = [&](const std::vector<RatMatrix>& g) {
    for (int i = 0; i <= d; ++i)
      if (!(g[i] == RatMatrix::identity(a.datum->dim_ch(i)))) return false;
    return true;
  };
  bool has_id = false;
  for (const auto& g : a.elements) has_id = has_id || is_identity(g);
  if (!has_id) throw InvalidActionError("identity element missing");
  for (const auto& g : a.elements)
    for (const auto& h : a.elements) {
      bool found = false;
      for (const auto& k : a.elements) {
        bool eq = true;
        for (int i = 0; i <= d && eq; ++i) eq = (g[i] * h[i] == k[i]);
        if (eq) {
          found = true;
          break;
        }
      }
      if (!found)
        throw InvalidActionError("action is not closed under composition");
    }
  return a;
}

GroupActionDatum trivial_action(DatumPtr datum) {
  std::vector<RatMatrix> id;
  for (int i = 0; i <= datum->dimension(); ++i)
    id.push_back(RatMatrix::identity(datum->dim_ch(i)));
  return make_action(std::move(datum), {id});
}

GroupActionDatum swap_action(DatumPtr square) {
  const auto& info = square->product_info();
  if (!info || info->left != info->right)
    throw InvalidActionError(
        "swap action needs a product of a datum with itself");
  const int d = square->dimension();
  std::vector<RatMatrix> swap(d + 1);
  for (int k = 0; k <= d; ++k) {
    RatMatrix m(square->dim_ch(k), square->dim_ch(k));
    for (std::size_t f = 0; f < square->dim_ch(k); ++f) {
      const auto s = info->split(k, f);
      m.at(f, info->index(s.right_codim, s.right_index, s.left_codim,
                          s.left_index)) = 1;
    }
    swap[k] = m;
  }
  std::vector<RatMatrix> id;
  for (int i = 0; i <= d; ++i) id.push_back(RatMatrix::identity(square->dim_ch(i)));
  return make_action(square, {id, swap});
}

// -------------------------------------------------------------- quotient

QuotientResult quotient(const GroupActionDatum& action) {
  const DatumPtr& amb = action.datum;
  const int d = amb->dimension();
  const std::size_t order = action.elements.size();
  const Rational inv_order = Rational(1) / rat(static_cast<long>(order));

  // Echelon basis of each invariant subspace via the averaging projector.
  std::vector<RatMatrix> inv_basis(d + 1);
  for (int i = 0; i <= d; ++i) {
    RatMatrix avg(amb->dim_ch(i), amb->dim_ch(i));
    for (const auto& g : action.elements) avg = avg + g[i];
    inv_basis[i] = row_space_basis(avg.scaled(inv_order));
  }

  auto push_coords = [&](int i, const RatVector& x) {
    RatVector total(amb->dim_ch(i));
    for (const auto& g : action.elements)
      total = vec_add(total, vec_matrix(x, g[i]));
    auto coords = express_in_row_basis(total, inv_basis[i]);
    require(coords.has_value(), "averaged class left the invariant span");
    return *coords;
  };

  ChowDatum::Data data;
  data.dimension = d;
  data.basis.resize(d + 1);
  for (int i = 0; i <= d; ++i)
    for (std::size_t p = 0; p < inv_basis[i].rows(); ++p)
      data.basis[i].push_back("q^" + std::to_string(i) + "_" +
                              std::to_string(p));
  data.mult.assign(d + 1, std::vector<RatMatrix>(d + 1));
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      RatMatrix table(inv_basis[i].rows() * inv_basis[j].rows(),
                      inv_basis[i + j].rows());
      for (std::size_t p = 0; p < inv_basis[i].rows(); ++p)
        for (std::size_t q = 0; q < inv_basis[j].rows(); ++q) {
          const RatVector prod =
              amb->mul_coeffs(i, inv_basis[i].row(p), j, inv_basis[j].row(q));
          auto coords = express_in_row_basis(prod, inv_basis[i + j]);
          require(coords.has_value(),
                  "product of invariants left the invariant span");
          table.set_row(p * inv_basis[j].rows() + q, *coords);
        }
      data.mult[i][j] = table;
    }
  data.degree.resize(inv_basis[d].rows());
  for (std::size_t p = 0; p < inv_basis[d].rows(); ++p)
    data.degree[p] = inv_order * dot(inv_basis[d].row(p), amb->degree_vector());
  data.cellular = amb->cellular();
  data.name = amb->name() + "/G" + std::to_string(order);

  DatumPtr quot = ChowDatum::create(data);

  // Quotient Kunneth from the ambient one: the diagonal descends as
  // (1/|G|) (q x q)_* applied pairwise. Kept only if it passes the identity
  // and nondegeneracy checks.
  if (amb->has_kunneth()) {
    std::vector<KunnethPairRaw> candidate;
    for (const auto& kp : amb->kunneth_raw()) {
      KunnethPairRaw nkp;
      nkp.lambda_codim = kp.lambda_codim;
      nkp.lambda =
          vec_scale(push_coords(kp.lambda_codim, kp.lambda), inv_order);
      nkp.mu = push_coords(d - kp.lambda_codim, kp.mu);
      candidate.push_back(std::move(nkp));
    }
    ChowDatum::Data with_k = data;
    with_k.kunneth = std::move(candidate);
    with_k.has_kunneth = true;
    try {
      quot = ChowDatum::create(std::move(with_k));
    } catch (const ConstructionViolationError&) {
      // Averaged diagonal did not descend; quotient keeps no Kunneth data.
    }
  }

  // Quotient morphism: pullback includes invariants, pushforward is |G|
  // times the averaging projector in invariant coordinates.
  std::vector<RatMatrix> pb(d + 1), pf(d + 1);
  for (int i = 0; i <= d; ++i) {
    pb[i] = inv_basis[i];
    RatMatrix m(amb->dim_ch(i), inv_basis[i].rows());
    for (std::size_t p = 0; p < amb->dim_ch(i); ++p) {
      RatVector e(amb->dim_ch(i));
      e[p] = 1;
      m.set_row(p, push_coords(i, e));
    }
    pf[i] = m;
  }
  MorphismDatum q = make_morphism(amb, quot, pb, pf,
                                  rat(static_cast<long>(order)));
  return QuotientResult{quot, std::move(q)};
}

// -------------------------------------------------- builtin constructors

DatumPtr projective_space(int n) {
  require(n >= 0, "projective space needs n >= 0");
  ChowDatum::Data data;
  data.dimension = n;
  data.basis.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    data.basis[i].push_back("l^" + std::to_string(i));
  data.mult.assign(n + 1, std::vector<RatMatrix>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      RatMatrix t(1, 1);
      t.at(0, 0) = 1;
      data.mult[i][j] = t;
    }
  data.degree = {Rational(1)};
  for (int i = 0; i <= n; ++i) {
    KunnethPairRaw kp;
    kp.lambda_codim = i;
    kp.lambda = {Rational(1)};
    kp.mu = {Rational(1)};
    data.kunneth.push_back(std::move(kp));
  }
  data.has_kunneth = true;
  data.cellular = true;
  data.name = "P^" + std::to_string(n);
  return ChowDatum::create(std::move(data));
}

DatumPtr product(DatumPtr x, DatumPtr y) {
  if (!x->has_kunneth() || !y->has_kunneth())
    throw UnsupportedDatumError(
        "product needs strong Kunneth data on both factors");
  const int dx = x->dimension();
  const int dy = y->dimension();
  const int d = dx + dy;

  ProductInfo info;
  info.left = x;
  info.right = y;
  info.offsets.assign(d + 1, {});
  ChowDatum::Data data;
  data.dimension = d;
  data.basis.resize(d + 1);
  for (int k = 0; k <= d; ++k) {
    info.offsets[k].assign(k + 1, -1);
    for (int i = std::max(0, k - dy); i <= std::min(k, dx); ++i) {
      info.offsets[k][i] = static_cast<std::ptrdiff_t>(data.basis[k].size());
      for (std::size_t p = 0; p < x->dim_ch(i); ++p)
        for (std::size_t q = 0; q < y->dim_ch(k - i); ++q)
          data.basis[k].push_back(x->labels(i)[p] + "⊗" +
                                  y->labels(k - i)[q]);
    }
  }

  data.mult.assign(d + 1, std::vector<RatMatrix>(d + 1));
  for (int k1 = 0; k1 <= d; ++k1)
    for (int k2 = 0; k1 + k2 <= d; ++k2) {
      RatMatrix table(data.basis[k1].size() * data.basis[k2].size(),
                      data.basis[k1 + k2].size());
      for (std::size_t f1 = 0; f1 < data.basis[k1].size(); ++f1) {
        const auto s1 = [&] {
          // split() needs the finished info tables, which exist already.
          return info.split(k1, f1);
        }();
        for (std::size_t f2 = 0; f2 < data.basis[k2].size(); ++f2) {
          const auto s2 = info.split(k2, f2);
          const int il = s1.left_codim + s2.left_codim;
          const int jr = s1.right_codim + s2.right_codim;
          if (il > dx || jr > dy) continue;  // truncated to zero
          const RatVector rx =
              x->mult_row(s1.left_codim, s1.left_index, s2.left_codim,
                          s2.left_index);
          const RatVector ry =
              y->mult_row(s1.right_codim, s1.right_index, s2.right_codim,
                          s2.right_index);
          const std::size_t row = f1 * data.basis[k2].size() + f2;
          for (std::size_t r = 0; r < rx.size(); ++r) {
            if (rx[r] == 0) continue;
            for (std::size_t s = 0; s < ry.size(); ++s)
              if (ry[s] != 0)
                table.at(row, info.index(il, r, jr, s)) = rx[r] * ry[s];
          }
        }
      }
      data.mult[k1][k2] = table;
    }

  data.degree.resize(data.basis[d].size());
  for (std::size_t p = 0; p < x->dim_ch(dx); ++p)
    for (std::size_t q = 0; q < y->dim_ch(dy); ++q)
      data.degree[info.index(dx, p, dy, q)] =
          x->degree_vector()[p] * y->degree_vector()[q];

  for (const auto& kx : x->kunneth_raw())
    for (const auto& ky : y->kunneth_raw()) {
      KunnethPairRaw kp;
      kp.lambda_codim = kx.lambda_codim + ky.lambda_codim;
      kp.lambda.resize(data.basis[kp.lambda_codim].size());
      for (std::size_t p = 0; p < kx.lambda.size(); ++p)
        for (std::size_t q = 0; q < ky.lambda.size(); ++q)
          kp.lambda[info.index(kx.lambda_codim, p, ky.lambda_codim, q)] =
              kx.lambda[p] * ky.lambda[q];
      const int mu_x = dx - kx.lambda_codim;
      const int mu_y = dy - ky.lambda_codim;
      kp.mu.resize(data.basis[d - kp.lambda_codim].size());
      for (std::size_t p = 0; p < kx.mu.size(); ++p)
        for (std::size_t q = 0; q < ky.mu.size(); ++q)
          kp.mu[info.index(mu_x, p, mu_y, q)] = kx.mu[p] * ky.mu[q];
      data.kunneth.push_back(std::move(kp));
    }
  data.has_kunneth = true;
  data.cellular = x->cellular() && y->cellular();
  data.name = "(" + x->name() + " x " + y->name() + ")";
  data.product = std::move(info);
  return ChowDatum::create(std::move(data));
}

bool is_graded_iso(const DatumPtr& a, const DatumPtr& b,
                   const std::vector<RatMatrix>& mats, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int d = a->dimension();
  if (b->dimension() != d) return fail("dimensions differ");
  if (static_cast<int>(mats.size()) != d + 1)
    return fail("need one matrix per codim");
  for (int i = 0; i <= d; ++i) {
    if (mats[i].rows() != a->dim_ch(i) || mats[i].cols() != b->dim_ch(i))
      return fail("matrix shape mismatch at codim " + std::to_string(i));
    if (a->dim_ch(i) != b->dim_ch(i) || rank(mats[i]) != a->dim_ch(i))
      return fail("not an isomorphism at codim " + std::to_string(i));
  }
  RatVector unit_row(1);
  unit_row[0] = 1;
  if (vec_matrix(unit_row, mats[0]) != unit_row)
    return fail("unit not preserved");
  for (int i = 0; i <= d; ++i)
    for (std::size_t p = 0; p < a->dim_ch(i); ++p)
      for (int j = 0; i + j <= d; ++j)
        for (std::size_t q = 0; q < a->dim_ch(j); ++q) {
          const RatVector lhs =
              vec_matrix(a->mult_row(i, p, j, q), mats[i + j]);
          RatVector x(a->dim_ch(i));
          x[p] = 1;
          RatVector y(a->dim_ch(j));
          y[q] = 1;
          const RatVector rhs = b->mul_coeffs(i, vec_matrix(x, mats[i]), j,
                                              vec_matrix(y, mats[j]));
          if (lhs != rhs)
            return fail("not multiplicative on " + a->labels(i)[p] + ", " +
                        a->labels(j)[q]);
        }
  for (std::size_t p = 0; p < a->dim_ch(d); ++p) {
    RatVector x(a->dim_ch(d));
    x[p] = 1;
    if (dot(vec_matrix(x, mats[d]), b->degree_vector()) !=
        dot(x, a->degree_vector()))
      return fail("degree map not preserved");
  }
  return true;
}

}  // namespace chowlift
