#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hermcap/hermitian.hpp"

namespace hermcap {

using Rational = boost::multiprecision::cpp_rational;

/// Minimum and maximum relevance over the uncovered points of an incomplete cap.
struct RelevanceExtrema {
  int r_minus = 0;
  int r_plus = 0;

  friend bool operator==(const RelevanceExtrema&, const RelevanceExtrema&) = default;
};

/// A Hermitian cap C with incrementally maintained coverage multiplicities
/// c(y, C) = #{x in C : y in G_x}. Adding or removing a point costs one pass
/// over its tangent section.
///
/// Not thread-safe; the referenced model must outlive the cap.
class CapState {
 public:
  explicit CapState(const SurfaceModel& model);
  /// Builds a cap from a point list; throws CapViolation if it is not a cap.
  CapState(const SurfaceModel& model, std::span<const PointId> points);

  const SurfaceModel& model() const { return *model_; }

  /// Throws CapViolation if x is already covered (this includes members).
  void add(PointId x);
  /// Throws NotFound if x is not a member.
  void remove(PointId x);

  bool contains(PointId x) const { return position_[x] != kAbsent; }
  std::size_t size() const { return members_.size(); }
  /// Members in insertion order, perturbed by removals.
  std::span<const PointId> members() const { return members_; }
  std::vector<PointId> sorted_members() const;

  std::uint32_t coverage_mult(PointId y) const { return cmult_[y]; }
  std::span<const std::uint32_t> multiplicities() const { return cmult_; }
  bool covered(PointId y) const { return cmult_[y] != 0; }
  /// |G C|
  std::size_t covered_count() const { return covered_count_; }

  /// r(x, C) = |G_x \ G C|; zero for members.
  int relevance(PointId x) const;
  /// |G_x ∩ G C|, so relevance(x) + coverage_intersect(x) = |G_x|.
  int coverage_intersect(PointId x) const;
  /// r(x, C \ {x}) for a member x. Throws DomainError otherwise.
  int member_relevance(PointId x) const;

  /// w(x, C) = sum over G_x of 1 / c(y, C). Throws DomainError for non-members.
  Rational weight(PointId x) const;
  double weight_approx(PointId x) const;
  /// w(x, C ∪ {x}) for an uncovered x, without modifying the cap.
  double weight_if_added(PointId x) const;

  std::vector<PointId> uncovered() const;
  bool is_complete() const { return covered_count_ == cmult_.size(); }
  /// nullopt when the cap is complete.
  std::optional<RelevanceExtrema> r_extrema() const;

  friend bool operator==(const CapState& a, const CapState& b) {
    return a.model_ == b.model_ && a.cmult_ == b.cmult_ && a.covered_count_ == b.covered_count_ &&
           a.sorted_members() == b.sorted_members();
  }

 private:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;

  const SurfaceModel* model_;
  std::vector<PointId> members_;
  std::vector<std::uint32_t> position_;
  std::vector<std::uint32_t> cmult_;
  std::size_t covered_count_ = 0;
};

}  // namespace hermcap
