#pragma once

#include <string>
#include <vector>

#include "jumploci/matrix.hpp"
#include "jumploci/poly.hpp"

namespace jumploci {

/// Finitely generated ideal. Generators are stored normalized up to units
/// (see normalize_associate) and deduplicated; the zero ideal has no
/// generators.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, const std::vector<Poly>& generators = {});
  static Ideal unit(RingPtr ring);
  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring)); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return generators_; }
  bool is_zero_ideal() const { return generators_.empty(); }
  /// True when some generator is a unit (so the ideal is the whole ring).
  bool has_unit_generator() const;

  void add(const Poly& f);
  std::vector<std::string> to_strings() const;

 private:
  RingPtr ring_;
  std::vector<Poly> generators_;
};

/// All s x s minors of m, as an ideal. s <= 0 gives the unit ideal and
/// s > min(rows, cols) gives the zero ideal.
Ideal minors_ideal(const PolyMatrix& m, long s);

/// Raw list of nonzero s x s minors (row-subset-major order).
std::vector<Poly> nonzero_minors(const PolyMatrix& m, std::size_t s);

}  // namespace jumploci
