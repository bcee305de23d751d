#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "jumploci/field.hpp"
#include "jumploci/ideal.hpp"

namespace jumploci {

using Coords = std::vector<Scalar>;

/// A set of points of F^r (or of the torus (F^x)^r) over a finite field F.
/// Points are kept sorted by coordinate codes, so iteration order and
/// formatting are canonical.
class PointSet {
 public:
  PointSet(FieldPtr field, std::size_t dim, bool torus = false)
      : field_(std::move(field)), dim_(dim), torus_(torus) {}

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  std::size_t dim() const { return dim_; }
  bool torus() const { return torus_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::set<Coords>& points() const { return points_; }

  void insert(Coords p);
  bool contains(const Coords& p) const { return points_.count(p) > 0; }
  bool is_subset_of(const PointSet& other) const;

  PointSet united(const PointSet& other) const;
  PointSet intersected(const PointSet& other) const;

  std::string format_point(const Coords& p) const;
  std::vector<std::string> to_strings() const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_;
  }

 private:
  FieldPtr field_;
  std::size_t dim_;
  bool torus_;
  std::set<Coords> points_;
};

struct EnumerationLimits {
  std::uint64_t max_points = 4'000'000;
};

/// Number of points of F^r (or (F^x)^r).
std::uint64_t point_count(const Field& field, std::size_t dim, bool torus);

/// Visits every point of F^r (or (F^x)^r); throws ScopeError when the
/// domain exceeds the limit and for infinite fields.
void for_each_point(const FieldPtr& field, std::size_t dim, bool torus,
                    const std::function<void(const Coords&)>& visit,
                    const EnumerationLimits& limits = {});

/// Points satisfying `pred`. The domain is split across worker threads when
/// large; the result does not depend on the schedule.
PointSet filter_points(const FieldPtr& field, std::size_t dim, bool torus,
                       const std::function<bool(const Coords&)>& pred,
                       const EnumerationLimits& limits = {});

/// All points of the domain.
PointSet all_points(const FieldPtr& field, std::size_t dim, bool torus,
                    const EnumerationLimits& limits = {});

/// Points of F^r (or (F^x)^r) at which every generator of `ideal` vanishes.
/// Laurent rings always enumerate the torus.
PointSet zero_locus_points(const Ideal& ideal, const FieldPtr& field, bool torus,
                           const EnumerationLimits& limits = {});

}  // namespace jumploci
