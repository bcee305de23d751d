#include "jumploci/ideal.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "jumploci/errors.hpp"

namespace jumploci {

Ideal::Ideal(RingPtr ring, const std::vector<Poly>& generators) : ring_(std::move(ring)) {
  for (const auto& g : generators) add(g);
}

Ideal Ideal::unit(RingPtr ring) {
  Ideal i(ring);
  i.add(Poly::from_int(ring, 1));
  return i;
}

bool Ideal::has_unit_generator() const {
  return std::any_of(generators_.begin(), generators_.end(),
                     [](const Poly& g) { return g.is_unit(); });
}

void Ideal::add(const Poly& f) {
  if (f.is_zero()) return;
  if (!same_ring(f.ring(), ring_)) throw PreconditionError("ideal generator from another ring");
  Poly g = normalize_associate(f);
  if (std::find(generators_.begin(), generators_.end(), g) == generators_.end())
    generators_.push_back(std::move(g));
}

std::vector<std::string> Ideal::to_strings() const {
  std::vector<std::string> out;
  for (const auto& g : generators_) out.push_back(g.to_string());
  return out;
}

namespace {

// Minors by expansion along the smallest row of the row set, memoized on
// (row mask, column mask).
class MinorTable {
 public:
  explicit MinorTable(const PolyMatrix& m) : m_(m) {}

  const Poly& minor(std::uint32_t rows, std::uint32_t cols) {
    const std::uint64_t key = (static_cast<std::uint64_t>(rows) << 32) | cols;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Poly acc(m_.ring());
    if (rows == 0) {
      acc = Poly::from_int(m_.ring(), 1);
    } else {
      const int r = std::countr_zero(rows);
      const std::uint32_t rest = rows & (rows - 1);
      int sign = 1;
      for (std::uint32_t cs = cols; cs != 0; cs &= cs - 1) {
        const int c = std::countr_zero(cs);
        const Poly& entry = m_.at(r, c);
        if (!entry.is_zero()) {
          const Poly& sub = minor(rest, cols & ~(1u << c));
          if (!sub.is_zero()) {
            if (sign > 0)
              acc += entry * sub;
            else
              acc -= entry * sub;
          }
        }
        sign = -sign;
      }
    }
    return memo_.emplace(key, std::move(acc)).first->second;
  }

 private:
  const PolyMatrix& m_;
  std::unordered_map<std::uint64_t, Poly> memo_;
};

void subsets(std::size_t n, std::size_t k, std::vector<std::uint32_t>& out) {
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) == k) out.push_back(mask);
}

}  // namespace

std::vector<Poly> nonzero_minors(const PolyMatrix& m, std::size_t s) {
  if (m.rows() > 24 || m.cols() > 24) throw ScopeError("minor enumeration limited to 24x24 matrices");
  std::vector<Poly> out;
  if (s > std::min(m.rows(), m.cols())) return out;
  std::vector<std::uint32_t> row_sets, col_sets;
  subsets(m.rows(), s, row_sets);
  subsets(m.cols(), s, col_sets);
  // Skip all-zero rows/columns up front: any minor using them vanishes.
  std::uint32_t live_rows = 0, live_cols = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) {
        live_rows |= 1u << r;
        live_cols |= 1u << c;
      }
  MinorTable table(m);
  for (auto rs : row_sets) {
    if ((rs & ~live_rows) != 0) continue;
    for (auto cs : col_sets) {
      if ((cs & ~live_cols) != 0) continue;
      const Poly& d = table.minor(rs, cs);
      if (!d.is_zero()) out.push_back(d);
    }
  }
  return out;
}

Ideal minors_ideal(const PolyMatrix& m, long s) {
  if (s <= 0) return Ideal::unit(m.ring());
  return Ideal(m.ring(), nonzero_minors(m, static_cast<std::size_t>(s)));
}

}  // namespace jumploci
