#pragma once

#include <cstdint>
#include <random>

#include "chowlift/correspond.hpp"

namespace chowlift {

// Deterministic seeded generator for randomized property checks. All draws
// reduce raw mt19937_64 output so a given seed reproduces bit-for-bit.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::size_t uniform(std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(next() % n);
  }

  long integer(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(next() %
                                  static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational rational(long max_abs_num = 9, long max_den = 4) {
    return rat(integer(-max_abs_num, max_abs_num), integer(1, max_den));
  }

  Class random_class(const DatumPtr& x, int codim) {
    RatVector v(x->dim_ch(codim));
    for (auto& e : v)
      if (uniform(2) == 0) e = rational();
    return x->make_class(codim, std::move(v));
  }

  Correspondence random_correspondence(const DatumPtr& s, const DatumPtr& t,
                                       int codim) {
    Correspondence c = Correspondence::zero(s, t, codim);
    for (int i = c.block_min(); i <= c.block_max(); ++i) {
      RatMatrix m(s->dim_ch(i), t->dim_ch(codim - i));
      for (std::size_t p = 0; p < m.rows(); ++p)
        for (std::size_t q = 0; q < m.cols(); ++q)
          if (uniform(2) == 0) m.at(p, q) = rational();
      c.add_to_block(i, m);
    }
    return c;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace chowlift
