#include "rng.hpp"

#include "error.hpp"

namespace psc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream)
    : master_(master_seed),
      stream_(stream),
      engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(~stream))) {}

std::uint64_t Rng::next_u64() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::Invalid, "Rng::below(0)");
  if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % n;
  }
}

std::int64_t Rng::int_in(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) fail(ErrorCode::Invalid, "Rng::int_in: empty range");
  return lo + static_cast<std::int64_t>(
                  below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::chance(const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  if (!p.get_den().fits_ulong_p())
    fail(ErrorCode::Invalid, "Rng::chance: denominator too large");
  unsigned long den = p.get_den().get_ui();
  unsigned long num = p.get_num().get_ui();
  return below(den) < num;
}

Rational Rng::rational_in(const Rational& lo, const Rational& hi,
                          unsigned long den_bound) {
  if (!(lo < hi)) fail(ErrorCode::Invalid, "Rng::rational_in: lo must be < hi");
  if (den_bound == 0) fail(ErrorCode::Invalid, "Rng::rational_in: zero denominator bound");
  Integer t_lo = ceil_rational(lo * Rational(den_bound));
  Integer t_hi = floor_rational(hi * Rational(den_bound));
  Integer count = t_hi - t_lo + 1;
  if (count <= 0 || !count.fits_ulong_p())
    fail(ErrorCode::Invalid, "Rng::rational_in: grid empty or too large");
  Integer t = t_lo + Integer(static_cast<unsigned long>(below(count.get_ui())));
  Rational q(t, Integer(den_bound));
  q.canonicalize();
  return q;
}

Rng Rng::fork(std::uint64_t substream) const {
  return Rng(splitmix64(master_ ^ splitmix64(stream_)), substream);
}

}  // namespace psc
