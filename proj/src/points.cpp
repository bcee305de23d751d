#include "jumploci/points.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "jumploci/errors.hpp"

namespace jumploci {

void PointSet::insert(Coords p) {
  if (p.size() != dim_) throw PreconditionError("point dimension mismatch");
  points_.insert(std::move(p));
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
}

PointSet PointSet::united(const PointSet& other) const {
  PointSet out = *this;
  for (const auto& p : other.points_) out.points_.insert(p);
  return out;
}

PointSet PointSet::intersected(const PointSet& other) const {
  PointSet out(field_, dim_, torus_);
  for (const auto& p : points_)
    if (other.contains(p)) out.points_.insert(p);
  return out;
}

std::string PointSet::format_point(const Coords& p) const {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += field_->format(p[i]);
  }
  return s + ")";
}

std::vector<std::string> PointSet::to_strings() const {
  std::vector<std::string> out;
  for (const auto& p : points_) out.push_back(format_point(p));
  return out;
}

std::uint64_t point_count(const Field& field, std::size_t dim, bool torus) {
  if (!field.is_finite()) throw ScopeError("point enumeration over an infinite field (" + field.name() + ")");
  const std::uint64_t base = static_cast<std::uint64_t>(field.size()) - (torus ? 1 : 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (base != 0 && total > (std::uint64_t{1} << 62) / base) return std::uint64_t{1} << 62;
    total *= base;
  }
  return total;
}

namespace {

void check_limits(const Field& field, std::size_t dim, bool torus, const EnumerationLimits& limits) {
  const auto n = point_count(field, dim, torus);
  if (n > limits.max_points)
    throw ScopeError("enumeration of " + std::to_string(n) + " points over " + field.name() +
                     " exceeds the limit of " + std::to_string(limits.max_points));
}

// Visits the points whose index lies in [begin, end), index read in mixed
// radix with the last coordinate varying fastest.
void visit_range(const FieldPtr& field, std::size_t dim, bool torus, std::uint64_t begin,
                 std::uint64_t end, const std::function<void(const Coords&)>& visit) {
  const std::uint64_t base = static_cast<std::uint64_t>(field->size()) - (torus ? 1 : 0);
  const std::int64_t offset = torus ? 1 : 0;
  Coords p(dim);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t k = dim; k-- > 0;) {
      p[k] = field->element(static_cast<std::int64_t>(rest % base) + offset);
      rest /= base;
    }
    visit(p);
  }
}

}  // namespace

void for_each_point(const FieldPtr& field, std::size_t dim, bool torus,
                    const std::function<void(const Coords&)>& visit, const EnumerationLimits& limits) {
  check_limits(*field, dim, torus, limits);
  visit_range(field, dim, torus, 0, point_count(*field, dim, torus), visit);
}

PointSet filter_points(const FieldPtr& field, std::size_t dim, bool torus,
                       const std::function<bool(const Coords&)>& pred, const EnumerationLimits& limits) {
  check_limits(*field, dim, torus, limits);
  const std::uint64_t total = point_count(*field, dim, torus);
  PointSet out(field, dim, torus);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = total < 4096 ? 1 : std::min<unsigned>(hw, 8);
  if (workers == 1) {
    visit_range(field, dim, torus, 0, total, [&](const Coords& p) {
      if (pred(p)) out.insert(p);
    });
    return out;
  }
  std::vector<std::vector<Coords>> found(workers);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = total * w / workers, end = total * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        visit_range(field, dim, torus, begin, end, [&](const Coords& p) {
          if (pred(p)) found[w].push_back(p);
        });
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& bucket : found)
    for (auto& p : bucket) out.insert(std::move(p));
  return out;
}

PointSet all_points(const FieldPtr& field, std::size_t dim, bool torus, const EnumerationLimits& limits) {
  return filter_points(field, dim, torus, [](const Coords&) { return true; }, limits);
}

PointSet zero_locus_points(const Ideal& ideal, const FieldPtr& field, bool torus,
                           const EnumerationLimits& limits) {
  const RingPtr& ring = ideal.ring();
  torus = torus || ring->laurent();
  const Embedding emb(ring->field_ptr(), field);
  const auto& gens = ideal.generators();
  return filter_points(
      field, ring->nvars(), torus,
      [&](const Coords& p) {
        for (const auto& g : gens)
          if (!field->is_zero(g.evaluate(p, emb))) return false;
        return true;
      },
      limits);
}

}  // namespace jumploci
