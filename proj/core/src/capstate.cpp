#include "hermcap/capstate.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "hermcap/errors.hpp"

namespace hermcap {

CapState::CapState(const SurfaceModel& model)
    : model_(&model), position_(model.size(), kAbsent), cmult_(model.size(), 0) {}

CapState::CapState(const SurfaceModel& model, std::span<const PointId> points) : CapState(model) {
  for (PointId x : points) add(x);
}

void CapState::add(PointId x) {
  if (x >= cmult_.size()) throw ArgumentError("point id " + std::to_string(x) + " out of range");
  if (cmult_[x] != 0) throw CapViolation("point " + std::to_string(x) + " is covered by the cap");
  for (PointId y : model_->tangent_set(x)) {
    if (cmult_[y]++ == 0) ++covered_count_;
  }
  position_[x] = static_cast<std::uint32_t>(members_.size());
  members_.push_back(x);
}

void CapState::remove(PointId x) {
  if (x >= cmult_.size() || !contains(x)) throw NotFound("point " + std::to_string(x) + " is not in the cap");
  for (PointId y : model_->tangent_set(x)) {
    if (--cmult_[y] == 0) --covered_count_;
  }
  const std::uint32_t pos = position_[x];
  const PointId last = members_.back();
  members_[pos] = last;
  position_[last] = pos;
  members_.pop_back();
  position_[x] = kAbsent;
}

std::vector<PointId> CapState::sorted_members() const {
  std::vector<PointId> s = members_;
  std::sort(s.begin(), s.end());
  return s;
}

int CapState::relevance(PointId x) const {
  int r = 0;
  for (PointId y : model_->tangent_set(x)) r += cmult_[y] == 0;
  return r;
}

int CapState::coverage_intersect(PointId x) const {
  int c = 0;
  for (PointId y : model_->tangent_set(x)) c += cmult_[y] != 0;
  return c;
}

int CapState::member_relevance(PointId x) const {
  if (!contains(x)) throw DomainError("relevance in the cap requires a member point");
  int r = 0;
  for (PointId y : model_->tangent_set(x)) r += cmult_[y] == 1;
  return r;
}

Rational CapState::weight(PointId x) const {
  if (!contains(x)) throw DomainError("weight is defined only for members of the cap");
  // Group by multiplicity so the rational sum has few terms.
  std::vector<std::uint64_t> by_mult(size() + 1, 0);
  for (PointId y : model_->tangent_set(x)) ++by_mult[cmult_[y]];
  Rational w = 0;
  for (std::size_t c = 1; c < by_mult.size(); ++c) {
    if (by_mult[c] != 0) w += Rational(by_mult[c], c);
  }
  return w;
}

double CapState::weight_approx(PointId x) const {
  if (!contains(x)) throw DomainError("weight is defined only for members of the cap");
  double w = 0;
  for (PointId y : model_->tangent_set(x)) w += 1.0 / cmult_[y];
  return w;
}

double CapState::weight_if_added(PointId x) const {
  if (cmult_[x] != 0) throw DomainError("weight after addition requires an uncovered point");
  double w = 0;
  for (PointId y : model_->tangent_set(x)) w += 1.0 / (cmult_[y] + 1);
  return w;
}

std::vector<PointId> CapState::uncovered() const {
  std::vector<PointId> out;
  out.reserve(cmult_.size() - covered_count_);
  for (PointId y = 0; y < cmult_.size(); ++y)
    if (cmult_[y] == 0) out.push_back(y);
  return out;
}

std::optional<RelevanceExtrema> CapState::r_extrema() const {
  if (is_complete()) return std::nullopt;
  RelevanceExtrema e{std::numeric_limits<int>::max(), 0};
  for (PointId y = 0; y < cmult_.size(); ++y) {
    if (cmult_[y] != 0) continue;
    const int r = relevance(y);
    e.r_minus = std::min(e.r_minus, r);
    e.r_plus = std::max(e.r_plus, r);
  }
  return e;
}

}  // namespace hermcap
