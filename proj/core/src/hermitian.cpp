#include "hermcap/hermitian.hpp"

#include <algorithm>
#include <mutex>

#include "hermcap/errors.hpp"

namespace hermcap {

namespace {

constexpr PointId kNoPoint = 0xffffffffu;
// Keys of PG(3,q^2) up to q = 7 fit a direct lookup table (order^4 = 5.8M).
constexpr std::uint64_t kDenseIndexLimit = std::uint64_t{1} << 23;

// Visits the normalized vectors of length N over a field of the given order
// in lexicographic order. Returns early when fn returns false.
template <std::size_t N, typename Fn>
bool for_each_normalized(unsigned order, Fn&& fn) {
  std::array<Elem, N> v{};
  for (std::size_t lead = N; lead-- > 0;) {
    v.fill(0);
    v[lead] = 1;
    const std::size_t free = N - 1 - lead;
    std::size_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= order;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = N; i-- > lead + 1;) {
        v[i] = static_cast<Elem>(c % order);
        c /= order;
      }
      if (!fn(v)) return false;
    }
  }
  return true;
}

Elem self_form(const FieldTables& f, const std::array<Elem, 4>& v) {
  Elem s = 0;
  for (Elem c : v) s = f.add(s, f.norm(c));
  return s;
}

}  // namespace

struct SurfaceModel::GeneratorCache {
  std::once_flag once;
  std::vector<GeneratorLine> lines;
  std::vector<std::uint32_t> through;  // q+1 generator ids per point
};

Elem hermitian_inner(const FieldTables& f, const ProjPoint& x, const ProjPoint& y) {
  Elem s = 0;
  for (std::size_t i = 0; i < 4; ++i) s = f.add(s, f.mul(x.coords[i], f.conj(y.coords[i])));
  return s;
}

std::optional<ProjPoint> normalize(const FieldTables& f, std::array<Elem, 4> v) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (v[i] == 0) continue;
    const Elem s = f.inv(v[i]);
    for (std::size_t j = i; j < 4; ++j) v[j] = f.mul(v[j], s);
    return ProjPoint{v};
  }
  return std::nullopt;
}

SurfaceCounts surface_counts(unsigned q) {
  const std::uint64_t Q = q;
  return SurfaceCounts{
      (Q * Q * Q + 1) * (Q * Q + 1), Q * Q * Q + Q * Q + 1, (Q * Q * Q + 1) * (Q + 1),
      Q + 1,                         Q * Q + 1,             Q * Q * Q + 1,
  };
}

SurfaceModel::SurfaceModel(FieldTables field, SurfaceOptions options)
    : field_(std::move(field)), generators_(std::make_unique<GeneratorCache>()) {
  const auto counts = surface_counts(field_.q());
  points_.reserve(counts.points);
  for_each_normalized<4>(field_.order(), [&](const std::array<Elem, 4>& v) {
    if (self_form(field_, v) == 0) points_.push_back(ProjPoint{v});
    return true;
  });
  keys_.reserve(points_.size());
  for (const auto& p : points_) keys_.push_back(key(p));
  const std::uint64_t o = field_.order();
  if (o * o * o * o <= kDenseIndexLimit) {
    index_.assign(o * o * o * o, kNoPoint);
    for (PointId id = 0; id < keys_.size(); ++id) index_[keys_[id]] = id;
  }

  tangent_size_ = counts.tangent_size;
  const std::size_t bytes = points_.size() * tangent_size_ * sizeof(PointId);
  if (bytes <= options.conjugacy_budget_bytes) {
    tangent_.resize(points_.size() * tangent_size_);
    for (PointId x = 0; x < points_.size(); ++x) {
      auto ts = compute_tangent(x);
      std::copy(ts.begin(), ts.end(), tangent_.begin() + static_cast<std::ptrdiff_t>(x * tangent_size_));
    }
  }
}

SurfaceModel::~SurfaceModel() = default;
SurfaceModel::SurfaceModel(SurfaceModel&&) noexcept = default;

std::uint64_t SurfaceModel::key(const ProjPoint& p) const {
  std::uint64_t k = 0;
  for (Elem c : p.coords) k = k * field_.order() + c;
  return k;
}

std::optional<PointId> SurfaceModel::find(const ProjPoint& p) const {
  const auto k = key(p);
  if (!index_.empty()) {
    const PointId id = index_[k];
    return id == kNoPoint ? std::nullopt : std::optional<PointId>(id);
  }
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return std::nullopt;
  return static_cast<PointId>(it - keys_.begin());
}

// Enumerates the polar plane of x as {y : sum_i conj(x_i) y_i = 0} by solving
// for the coordinate at x's leading position (where conj(x_i) = 1).
std::vector<PointId> SurfaceModel::compute_tangent(PointId x) const {
  const auto& f = field_;
  const auto& xc = points_[x].coords;
  std::array<Elem, 4> a{};
  for (std::size_t i = 0; i < 4; ++i) a[i] = f.conj(xc[i]);
  std::size_t lead = 0;
  while (a[lead] == 0) ++lead;

  std::array<std::size_t, 3> others{};
  for (std::size_t i = 0, j = 0; i < 4; ++i)
    if (i != lead) others[j++] = i;

  std::vector<PointId> out;
  out.reserve(tangent_size_);
  for_each_normalized<3>(f.order(), [&](const std::array<Elem, 3>& t) {
    std::array<Elem, 4> y{};
    Elem s = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      y[others[j]] = t[j];
      s = f.add(s, f.mul(a[others[j]], t[j]));
    }
    y[lead] = f.neg(s);
    if (self_form(f, y) != 0) return true;
    if (auto id = find(*normalize(f, y))) out.push_back(*id);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

TangentSet SurfaceModel::tangent_set(PointId x) const {
  if (!tangent_.empty())
    return TangentSet(std::span<const PointId>(tangent_.data() + x * tangent_size_, tangent_size_));
  return TangentSet(compute_tangent(x));
}

bool SurfaceModel::conjugate(PointId x, PointId y) const {
  return hermitian_inner(field_, points_[x], points_[y]) == 0;
}

void SurfaceModel::build_generators() const {
  auto& cache = *generators_;
  const auto& f = field_;
  const std::size_t n = points_.size();
  std::vector<std::uint8_t> mark(n, 0);
  std::vector<PointId> touched;
  for (PointId x = 0; x < n; ++x) {
    touched.clear();
    mark[x] = 1;
    touched.push_back(x);
    const auto gx = tangent_set(x);
    for (PointId y : gx) {
      if (mark[y]) continue;
      // The line xy lies on U since x, y are conjugate isotropic points.
      std::vector<PointId> line;
      line.reserve(f.order() + 1);
      line.push_back(y);
      const auto& xc = points_[x].coords;
      const auto& yc = points_[y].coords;
      for (unsigned mu = 0; mu < f.order(); ++mu) {
        std::array<Elem, 4> v{};
        for (std::size_t i = 0; i < 4; ++i) v[i] = f.add(xc[i], f.mul(static_cast<Elem>(mu), yc[i]));
        auto id = find(*normalize(f, v));
        if (!id) throw DomainError("generator construction left the surface");
        line.push_back(*id);
      }
      for (PointId z : line) {
        if (!mark[z]) {
          mark[z] = 1;
          touched.push_back(z);
        }
      }
      std::sort(line.begin(), line.end());
      if (line.front() == x) {
        cache.lines.push_back(GeneratorLine{static_cast<std::uint32_t>(cache.lines.size()), std::move(line)});
      }
    }
    for (PointId z : touched) mark[z] = 0;
  }

  const std::size_t per = q() + 1;
  cache.through.assign(n * per, 0);
  std::vector<std::size_t> fill(n, 0);
  for (const auto& g : cache.lines) {
    for (PointId z : g.points) {
      if (fill[z] >= per) throw DomainError("point lies on more than q+1 generators");
      cache.through[z * per + fill[z]++] = g.id;
    }
  }
}

const std::vector<GeneratorLine>& SurfaceModel::generators() const {
  std::call_once(generators_->once, [this] { build_generators(); });
  return generators_->lines;
}

std::span<const std::uint32_t> SurfaceModel::generators_through(PointId x) const {
  generators();
  const std::size_t per = q() + 1;
  return std::span<const std::uint32_t>(generators_->through.data() + x * per, per);
}

ProjPoint SurfaceModel::canonical_pole() const {
  ProjPoint pole;
  for_each_normalized<4>(field_.order(), [&](const std::array<Elem, 4>& v) {
    if (self_form(field_, v) == 0) return true;
    pole.coords = v;
    return false;
  });
  return pole;
}

std::vector<PointId> SurfaceModel::classical_ovoid(const ProjPoint& pole) const {
  if (hermitian_inner(field_, pole, pole) == 0)
    throw DomainError("pole lies on the surface; its polar plane is tangent");
  std::vector<PointId> out;
  for (PointId x = 0; x < points_.size(); ++x)
    if (hermitian_inner(field_, points_[x], pole) == 0) out.push_back(x);
  return out;
}

bool SurfaceModel::is_cap(std::span<const PointId> ids) const {
  std::vector<PointId> s(ids.begin(), ids.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (conjugate(s[i], s[j])) return false;
  return true;
}

SurfaceModel enumerate_surface(FieldTables field, SurfaceOptions options) {
  return SurfaceModel(std::move(field), options);
}

}  // namespace hermcap
