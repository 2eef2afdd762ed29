#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hermcap/galois.hpp"

namespace hermcap {

/// Index of a point of the Hermitian surface in SurfaceModel::points().
using PointId = std::uint32_t;

/// Homogeneous coordinates of a point of PG(3, q^2), normalized so that the
/// first nonzero coordinate is 1.
struct ProjPoint {
  std::array<Elem, 4> coords{};

  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// The diagonal Hermitian form H(x, y) = sum_i x_i * conj(y_i).
Elem hermitian_inner(const FieldTables& field, const ProjPoint& x, const ProjPoint& y);

/// Scales a nonzero vector so its first nonzero entry is 1; nullopt for the zero vector.
std::optional<ProjPoint> normalize(const FieldTables& field, std::array<Elem, 4> v);

/// A line of PG(3, q^2) lying on the surface.
struct GeneratorLine {
  std::uint32_t id = 0;
  std::vector<PointId> points;  ///< sorted, q^2 + 1 entries
};

/// Tangent section G_x = T_x U ∩ U of one point, either borrowed from the
/// model's dense table or computed on demand.
class TangentSet {
 public:
  explicit TangentSet(std::span<const PointId> view) : view_(view) {}
  explicit TangentSet(std::vector<PointId> owned) : owned_(std::move(owned)), view_(owned_) {}

  TangentSet(const TangentSet&) = delete;
  TangentSet& operator=(const TangentSet&) = delete;
  TangentSet(TangentSet&& other) noexcept
      : owned_(std::move(other.owned_)), view_(owned_.empty() ? other.view_ : owned_) {}
  TangentSet& operator=(TangentSet&&) = delete;

  std::span<const PointId> ids() const { return view_; }
  auto begin() const { return view_.begin(); }
  auto end() const { return view_.end(); }
  std::size_t size() const { return view_.size(); }

 private:
  std::vector<PointId> owned_;
  std::span<const PointId> view_;
};

/// Closed-form sizes of the configuration for a given q.
struct SurfaceCounts {
  std::uint64_t points;             ///< (q^3+1)(q^2+1)
  std::uint64_t tangent_size;       ///< q^3+q^2+1
  std::uint64_t generators;         ///< (q^3+1)(q+1)
  std::uint64_t generators_per_point;  ///< q+1
  std::uint64_t points_per_generator;  ///< q^2+1
  std::uint64_t ovoid_size;         ///< q^3+1
};

SurfaceCounts surface_counts(unsigned q);

struct SurfaceOptions {
  /// Tangent sets are precomputed when they fit in this many bytes.
  std::size_t conjugacy_budget_bytes = std::size_t{1} << 30;
};

/// The non-degenerate Hermitian surface U of PG(3, q^2) under the diagonal
/// form, with points ordered lexicographically by normalized coordinates.
///
/// Immutable after construction apart from the generator cache, which is
/// filled once under std::call_once and is safe to request concurrently.
class SurfaceModel {
 public:
  explicit SurfaceModel(FieldTables field, SurfaceOptions options = {});
  ~SurfaceModel();
  SurfaceModel(SurfaceModel&&) noexcept;
  SurfaceModel& operator=(SurfaceModel&&) = delete;
  SurfaceModel(const SurfaceModel&) = delete;
  SurfaceModel& operator=(const SurfaceModel&) = delete;

  const FieldTables& field() const { return field_; }
  unsigned q() const { return field_.q(); }
  SurfaceCounts counts() const { return surface_counts(q()); }

  std::size_t size() const { return points_.size(); }
  std::span<const ProjPoint> points() const { return points_; }
  const ProjPoint& point(PointId id) const { return points_[id]; }
  /// Looks up a normalized point; nullopt when it is not on the surface.
  std::optional<PointId> find(const ProjPoint& p) const;

  std::size_t tangent_size() const { return tangent_size_; }
  bool dense_conjugacy() const { return !tangent_.empty(); }
  /// Sorted ids of {y in U : H(x, y) = 0}; always contains x.
  TangentSet tangent_set(PointId x) const;
  bool conjugate(PointId x, PointId y) const;

  /// All generator lines, built on first use.
  const std::vector<GeneratorLine>& generators() const;
  /// Ids of the q+1 generators through a point, built together with generators().
  std::span<const std::uint32_t> generators_through(PointId x) const;

  /// Lexicographically first point of PG(3, q^2) off the surface.
  ProjPoint canonical_pole() const;
  /// Section of U by the polar plane of pole. Throws DomainError if the pole is on U.
  std::vector<PointId> classical_ovoid(const ProjPoint& pole) const;
  std::vector<PointId> classical_ovoid() const { return classical_ovoid(canonical_pole()); }

  /// True iff no two distinct listed points are conjugate.
  bool is_cap(std::span<const PointId> ids) const;

 private:
  struct GeneratorCache;

  std::uint64_t key(const ProjPoint& p) const;
  std::vector<PointId> compute_tangent(PointId x) const;
  void build_generators() const;

  FieldTables field_;
  std::vector<ProjPoint> points_;
  std::vector<std::uint64_t> keys_;
  std::vector<PointId> index_;  // key -> id for small fields; empty otherwise
  std::size_t tangent_size_ = 0;
  std::vector<PointId> tangent_;  // dense, tangent_size_ ids per point
  std::unique_ptr<GeneratorCache> generators_;
};

SurfaceModel enumerate_surface(FieldTables field, SurfaceOptions options = {});

}  // namespace hermcap
