#include "chowlift/correspond.hpp"

#include <algorithm>
#include <sstream>

#include "chowlift/errors.hpp"

namespace chowlift {

namespace {

void check_same_ambient(const Correspondence& a, const Correspondence& b,
                        const char* what) {
  if (a.source() != b.source() || a.target() != b.target() ||
      a.codim() != b.codim())
    throw AmbientMismatchError(std::string(what) +
                               ": correspondences live on different ambients");
}

}  // namespace

Correspondence Correspondence::zero(DatumPtr source, DatumPtr target,
                                    int codim) {
  Correspondence c;
  c.source_ = std::move(source);
  c.target_ = std::move(target);
  c.codim_ = codim;
  return c;
}

Correspondence Correspondence::product_cycle(const Class& u, const Class& v) {
  Correspondence c =
      zero(u.datum(), v.datum(), u.codim() + v.codim());
  RatMatrix m(u.coeffs().size(), v.coeffs().size());
  for (std::size_t p = 0; p < u.coeffs().size(); ++p) {
    if (u.coeffs()[p] == 0) continue;
    for (std::size_t q = 0; q < v.coeffs().size(); ++q)
      if (v.coeffs()[q] != 0) m.at(p, q) = u.coeffs()[p] * v.coeffs()[q];
  }
  if (m.rows() && m.cols()) c.set_block(u.codim(), std::move(m));
  return c;
}

int Correspondence::block_min() const {
  return std::max(0, codim_ - target_->dimension());
}

int Correspondence::block_max() const {
  return std::min(source_->dimension(), codim_);
}

RatMatrix Correspondence::block(int i) const {
  auto it = blocks_.find(i);
  if (it != blocks_.end()) return it->second;
  return RatMatrix(source_->dim_ch(i), target_->dim_ch(codim_ - i));
}

void Correspondence::add_to_block(int i, const RatMatrix& m) {
  if (m.is_zero()) return;
  auto it = blocks_.find(i);
  if (it == blocks_.end())
    blocks_.emplace(i, m);
  else
    it->second = it->second + m;
}

void Correspondence::set_block(int i, RatMatrix m) {
  if (m.rows() != source_->dim_ch(i) ||
      m.cols() != target_->dim_ch(codim_ - i))
    throw AmbientMismatchError("correspondence block shape mismatch");
  blocks_[i] = std::move(m);
}

bool Correspondence::is_zero() const {
  for (const auto& [i, m] : blocks_)
    if (!m.is_zero()) return false;
  return true;
}

Correspondence Correspondence::transpose() const {
  Correspondence t = zero(target_, source_, codim_);
  for (const auto& [i, m] : blocks_)
    if (!m.is_zero()) t.set_block(codim_ - i, m.transposed());
  return t;
}

Correspondence Correspondence::scaled(const Rational& s) const {
  Correspondence t = zero(source_, target_, codim_);
  if (s == 0) return t;
  for (const auto& [i, m] : blocks_) t.set_block(i, m.scaled(s));
  return t;
}

Correspondence operator+(const Correspondence& a, const Correspondence& b) {
  check_same_ambient(a, b, "sum");
  Correspondence r = a;
  for (const auto& [i, m] : b.blocks_) r.add_to_block(i, m);
  return r;
}

Correspondence operator-(const Correspondence& a, const Correspondence& b) {
  return a + b.scaled(-1);
}

bool operator==(const Correspondence& a, const Correspondence& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_ ||
      a.codim_ != b.codim_)
    return false;
  for (int i = a.block_min(); i <= a.block_max(); ++i)
    if (!(a.block(i) == b.block(i))) return false;
  return true;
}

std::string Correspondence::str() const {
  std::ostringstream os;
  os << "corr codim " << codim_ << " on " << source_->name() << " x "
     << target_->name() << ":";
  bool any = false;
  for (const auto& [i, m] : blocks_) {
    if (m.is_zero()) continue;
    os << " block(" << i << "," << codim_ - i << ")=" << m.str();
    any = true;
  }
  if (!any) os << " 0";
  return os.str();
}

Correspondence compose(const Correspondence& left,
                       const Correspondence& right) {
  if (right.target() != left.source())
    throw AmbientMismatchError("compose: middle datum mismatch");
  const DatumPtr& mid = right.target();
  const int e = mid->dimension();
  Correspondence out = Correspondence::zero(
      right.source(), left.target(), right.codim() + left.codim() - e);
  for (int i = right.block_min(); i <= right.block_max(); ++i) {
    if (!right.has_block(i)) continue;
    const int j = right.codim() - i;  // middle codim from the right factor
    const int k = e - j;              // pairs with middle codim of the left
    if (k < left.block_min() || k > left.block_max() || !left.has_block(k))
      continue;
    const RatMatrix rb = right.block(i);
    const RatMatrix lb = left.block(k);
    if (rb.is_zero() || lb.is_zero()) continue;
    out.add_to_block(i, rb * mid->pairing(j) * lb);
  }
  return out;
}

ComposeOracle::ComposeOracle(DatumPtr x, DatumPtr y, DatumPtr z)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  pair_ = product(x_, y_);
  triple_ = product(pair_, z_);
}

Correspondence ComposeOracle::compose(const Correspondence& left,
                                      const Correspondence& right) const {
  if (right.source() != x_ || right.target() != y_ || left.source() != y_ ||
      left.target() != z_)
    throw AmbientMismatchError("oracle: operands do not match its ambients");
  const auto& tinfo = *triple_->product_info();
  const auto& pinfo = *pair_->product_info();
  const int c1 = right.codim();
  const int c2 = left.codim();
  const int e = y_->dimension();

  Correspondence out =
      Correspondence::zero(x_, z_, c1 + c2 - e);
  if (c1 + c2 > triple_->dimension()) return out;
  if (c1 < 0 || c1 > pair_->dimension() || c2 < 0) return out;

  // p12^* right, expanded in the Kunneth basis of (X x Y) x Z.
  RatVector v12(triple_->dim_ch(c1));
  for (int i = right.block_min(); i <= right.block_max(); ++i) {
    if (!right.has_block(i)) continue;
    const RatMatrix b = right.block(i);
    for (std::size_t p = 0; p < b.rows(); ++p)
      for (std::size_t q = 0; q < b.cols(); ++q)
        if (b.at(p, q) != 0)
          v12[tinfo.index(c1, pinfo.index(i, p, c1 - i, q), 0, 0)] +=
              b.at(p, q);
  }

  // p23^* left.
  RatVector v23(triple_->dim_ch(c2));
  for (int k = left.block_min(); k <= left.block_max(); ++k) {
    if (!left.has_block(k)) continue;
    const RatMatrix b = left.block(k);
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t s = 0; s < b.cols(); ++s)
        if (b.at(r, s) != 0)
          v23[tinfo.index(k, pinfo.index(0, 0, k, r), c2 - k, s)] +=
              b.at(r, s);
  }

  // Multiply inside the triple product, then push forward along p13 by
  // applying the degree map to the middle tensor factor.
  const RatVector prod = triple_->mul_coeffs(c1, v12, c2, v23);
  for (std::size_t f = 0; f < prod.size(); ++f) {
    if (prod[f] == 0) continue;
    const auto ts = tinfo.split(c1 + c2, f);
    const auto ps = pinfo.split(ts.left_codim, ts.left_index);
    if (ps.right_codim != e) continue;
    const Rational w = prod[f] * y_->degree_vector()[ps.right_index];
    if (w == 0) continue;
    RatMatrix m(x_->dim_ch(ps.left_codim),
                z_->dim_ch(ts.right_codim));
    m.at(ps.left_index, ts.right_index) = w;
    out.add_to_block(ps.left_codim, m);
  }
  return out;
}

Correspondence compose_oracle(const Correspondence& left,
                              const Correspondence& right) {
  ComposeOracle oracle(right.source(), right.target(), left.target());
  return oracle.compose(left, right);
}

Class act(const Correspondence& alpha, const Class& x) {
  if (alpha.source() != alpha.target())
    throw AmbientMismatchError("act: correspondence is not square");
  if (alpha.source() != x.datum())
    throw AmbientMismatchError("act: class lives on a different datum");
  const int d = x.datum()->dimension();
  if (alpha.codim() != d)
    throw AmbientMismatchError("act: correspondence codim must equal dim");
  const int j = x.codim();
  if (j < 0 || j > d || !alpha.has_block(d - j))
    return x.datum()->zero_class(j);
  const RatVector paired = vec_matrix(x.coeffs(), x.datum()->pairing(j));
  return x.datum()->make_class(j, vec_matrix(paired, alpha.block(d - j)));
}

Correspondence diagonal(const DatumPtr& x) {
  if (!x->has_kunneth())
    throw UnsupportedDatumError("diagonal needs strong Kunneth data on " +
                                x->name());
  Correspondence d = Correspondence::zero(x, x, x->dimension());
  for (const auto& [lambda, mu] : x->kunneth_pairs())
    d = d + Correspondence::product_cycle(lambda, mu);
  return d;
}

Correspondence corr_pullback(const MorphismDatum& f, const Correspondence& a) {
  if (a.source() != f.target || a.target() != f.target)
    throw AmbientMismatchError(
        "corr_pullback: correspondence is not on target x target");
  Correspondence out =
      Correspondence::zero(f.source, f.source, a.codim());
  for (int i = a.block_min(); i <= a.block_max(); ++i) {
    if (!a.has_block(i)) continue;
    const int j = a.codim() - i;
    const RatMatrix b = a.block(i);
    if (b.is_zero()) continue;
    out.add_to_block(i, f.pullback[i].transposed() * b * f.pullback[j]);
  }
  return out;
}

Correspondence corr_pushforward(const MorphismDatum& f,
                                const Correspondence& a) {
  if (a.source() != f.source || a.target() != f.source)
    throw AmbientMismatchError(
        "corr_pushforward: correspondence is not on source x source");
  const int shift = f.codim_shift();
  Correspondence out = Correspondence::zero(f.target, f.target,
                                            a.codim() - 2 * shift);
  for (int i = a.block_min(); i <= a.block_max(); ++i) {
    if (!a.has_block(i)) continue;
    const int j = a.codim() - i;
    const RatMatrix b = a.block(i);
    if (b.is_zero()) continue;
    out.add_to_block(i - shift,
                     f.pushforward[i].transposed() * b * f.pushforward[j]);
  }
  return out;
}

bool is_idempotent(const Correspondence& a) {
  if (a.source() != a.target() || a.codim() != a.source()->dimension())
    throw AmbientMismatchError(
        "idempotence only defined for square correspondences of codim d");
  return compose(a, a) == a;
}

bool are_orthogonal(const Correspondence& a, const Correspondence& b) {
  check_same_ambient(a, b, "orthogonality");
  if (a.source() != a.target() || a.codim() != a.source()->dimension())
    throw AmbientMismatchError(
        "orthogonality only defined for square correspondences of codim d");
  return compose(a, b).is_zero() && compose(b, a).is_zero();
}

Correspondence corr_tensor(const Correspondence& a, const Correspondence& b,
                           const DatumPtr& source_prod,
                           const DatumPtr& target_prod) {
  const auto& sinfo = source_prod->product_info();
  const auto& tinfo = target_prod->product_info();
  if (!sinfo || !tinfo || sinfo->left != a.source() ||
      sinfo->right != b.source() || tinfo->left != a.target() ||
      tinfo->right != b.target())
    throw AmbientMismatchError("corr_tensor: product data do not match");
  Correspondence out = Correspondence::zero(source_prod, target_prod,
                                            a.codim() + b.codim());
  for (int i1 = a.block_min(); i1 <= a.block_max(); ++i1) {
    if (!a.has_block(i1)) continue;
    const RatMatrix ba = a.block(i1);
    if (ba.is_zero()) continue;
    const int j1 = a.codim() - i1;
    for (int i2 = b.block_min(); i2 <= b.block_max(); ++i2) {
      if (!b.has_block(i2)) continue;
      const RatMatrix bb = b.block(i2);
      if (bb.is_zero()) continue;
      const int j2 = b.codim() - i2;
      RatMatrix m(source_prod->dim_ch(i1 + i2),
                  target_prod->dim_ch(j1 + j2));
      for (std::size_t p1 = 0; p1 < ba.rows(); ++p1)
        for (std::size_t q1 = 0; q1 < ba.cols(); ++q1) {
          if (ba.at(p1, q1) == 0) continue;
          for (std::size_t p2 = 0; p2 < bb.rows(); ++p2)
            for (std::size_t q2 = 0; q2 < bb.cols(); ++q2)
              if (bb.at(p2, q2) != 0)
                m.at(sinfo->index(i1, p1, i2, p2),
                     tinfo->index(j1, q1, j2, q2)) =
                    ba.at(p1, q1) * bb.at(p2, q2);
        }
      out.add_to_block(i1 + i2, m);
    }
  }
  return out;
}

CKDecomposition make_ck(DatumPtr datum,
                        std::vector<Correspondence> projectors) {
  const int d = datum->dimension();
  if (static_cast<int>(projectors.size()) != 2 * d + 1)
    throw ConstructionViolationError(
        "a Chow-Kunneth decomposition needs exactly 2d+1 projectors");
  for (const auto& p : projectors)
    if (p.source() != datum || p.target() != datum || p.codim() != d)
      throw AmbientMismatchError(
          "projector is not a codim-d correspondence on datum x datum");
  return CKDecomposition{std::move(datum), std::move(projectors)};
}

CKDecomposition standard_ck(const DatumPtr& datum) {
  const int d = datum->dimension();
  const Correspondence diag = diagonal(datum);
  std::vector<Correspondence> projs;
  for (int j = 0; j <= 2 * d; ++j) {
    Correspondence p = Correspondence::zero(datum, datum, d);
    if (j % 2 == 0) {
      const int i = d - j / 2;
      if (diag.has_block(i)) p.set_block(i, diag.block(i));
    }
    projs.push_back(std::move(p));
  }
  return make_ck(datum, std::move(projs));
}

CKDecomposition ck_tensor(const CKDecomposition& a, const CKDecomposition& b,
                          const DatumPtr& prod) {
  const int d = prod->dimension();
  std::vector<Correspondence> projs;
  for (int k = 0; k <= 2 * d; ++k) {
    Correspondence p = Correspondence::zero(prod, prod, d);
    for (int i = 0; i <= k; ++i) {
      if (i > 2 * a.datum->dimension() || k - i > 2 * b.datum->dimension())
        continue;
      p = p + corr_tensor(a.projectors[i], b.projectors[k - i], prod, prod);
    }
    projs.push_back(std::move(p));
  }
  return make_ck(prod, std::move(projs));
}

CKDecomposition ck_quotient(const CKDecomposition& ambient,
                            const MorphismDatum& q) {
  if (ambient.datum != q.source)
    throw AmbientMismatchError(
        "ck_quotient: decomposition is not on the ambient datum");
  const Rational inv_order = 1 / q.generic_degree;
  std::vector<Correspondence> projs;
  for (const auto& p : ambient.projectors)
    projs.push_back(corr_pushforward(q, p).scaled(inv_order));
  return make_ck(q.target, std::move(projs));
}

Correspondence sum(const std::vector<Correspondence>& list) {
  if (list.empty())
    throw AmbientMismatchError("sum of an empty correspondence list");
  Correspondence s = list.front();
  for (std::size_t i = 1; i < list.size(); ++i) s = s + list[i];
  return s;
}

}  // namespace chowlift
