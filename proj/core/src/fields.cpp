#include "simplets/fields.hpp"

#include "simplets/error.hpp"

namespace simplets {

State::State(int nx, int ny)
    : p(nx, ny), T(nx, ny), rho(nx, ny), u(nx + 1, ny), v(nx, ny + 1) {}

Diffusivity::Diffusivity(int nx, int ny) : gamma(nx, ny), gamma_l(nx, ny) {}

FieldRefs refs(const State& s, const Diffusivity* d) {
  FieldRefs f;
  f.p = &s.p;
  f.T = &s.T;
  f.rho = &s.rho;
  f.u = &s.u;
  f.v = &s.v;
  if (d) {
    f.gamma = &d->gamma;
    f.gamma_l = &d->gamma_l;
  }
  return f;
}

FieldSet::FieldSet(int nx, int ny, bool explicit_planes)
    : nx_(nx),
      ny_(ny),
      states_{State(nx, ny), State(nx, ny), State(nx, ny)},
      diff_{Diffusivity(nx, ny), Diffusivity(nx, ny)} {
  if (explicit_planes) {
    planes_ = ExplicitPlanes{Array2D<double>(nx + 1, ny), Array2D<double>(nx, ny + 1),
                             Array2D<double>(nx, ny)};
  }
}

void FieldSet::begin_step() noexcept {
  old_ = prev_;
  cur_ = (prev_ + 1) % 3;
}

void FieldSet::next_iterate() noexcept {
  const int free = 3 - prev_ - cur_;
  old_ = cur_;
  cur_ = free;
  diff_old_ = 1 - diff_old_;
}

void FieldSet::accept_step() noexcept {
  prev_ = cur_;
  old_ = cur_;
  cur_ = (prev_ + 1) % 3;
  diff_old_ = 1 - diff_old_;
}

void FieldSet::set_roles(const std::array<int, 4>& r) {
  auto valid = [](int k, int n) { return k >= 0 && k < n; };
  if (!valid(r[0], 3) || !valid(r[1], 3) || !valid(r[2], 3) || !valid(r[3], 2) || r[2] == r[0] ||
      r[2] == r[1]) {
    throw UsageError("invalid snapshot role indices");
  }
  prev_ = r[0];
  old_ = r[1];
  cur_ = r[2];
  diff_old_ = r[3];
}

std::size_t FieldSet::persistent_scalars() const noexcept {
  std::size_t n = 0;
  for (const State& s : states_) n += s.p.size() + s.T.size() + s.rho.size() + s.u.size() + s.v.size();
  for (const Diffusivity& d : diff_) n += d.gamma.size() + d.gamma_l.size();
  if (planes_) n += planes_->u.size() + planes_->v.size() + planes_->T.size();
  return n;
}

MemoryReport memory_report(const FieldSet& f) noexcept {
  MemoryReport r;
  r.bytes = f.persistent_scalars() * sizeof(double);
  r.control_volumes = static_cast<std::size_t>(f.nx()) * static_cast<std::size_t>(f.ny());
  return r;
}

double MemoryReport::scalars_per_cv() const noexcept {
  return control_volumes == 0 ? 0.0
                              : static_cast<double>(bytes) / (8.0 * static_cast<double>(control_volumes));
}

}  // namespace simplets
