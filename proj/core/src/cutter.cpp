#include "relaxcut/cutter.hpp"

#include <algorithm>
#include <cmath>

#include "relaxcut/error.hpp"

namespace relaxcut {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Cutter::Cutter(CustomCutter c) : impl_(std::move(c)) {
  const auto& custom = std::get<CustomCutter>(impl_);
  if (!custom.map || !custom.in_fixed_set) {
    throw Error(ErrorCode::InvalidArgument, "custom cutter '" + custom.name + "' is incomplete");
  }
  if (custom.dim == 0) throw Error(ErrorCode::InvalidArgument, "custom cutter dimension");
  for (const Point& w : custom.witnesses) require_dim(w, custom.dim, "custom cutter witness");
}

std::size_t Cutter::dim() const {
  return std::visit(Overloaded{
                        [](const ExactCutter& c) { return ambient_dim(c.set); },
                        [](const SubgradientCutter& c) { return c.f.dim(); },
                        [](const CustomCutter& c) { return c.dim; },
                    },
                    impl_);
}

std::string Cutter::describe() const {
  return std::visit(Overloaded{
                        [](const ExactCutter& c) { return "exact " + relaxcut::describe(c.set); },
                        [](const SubgradientCutter& c) { return "subgradient " + c.f.name(); },
                        [](const CustomCutter& c) { return "custom " + c.name; },
                    },
                    impl_);
}

Point Cutter::apply(const Point& x) const {
  return std::visit(Overloaded{
                        [&](const ExactCutter& c) { return project_exact(c.set, x); },
                        [&](const SubgradientCutter& c) { return subgradient_project(c.f, x); },
                        [&](const CustomCutter& c) {
                          require_dim(x, c.dim, c.name.c_str());
                          return c.map(x);
                        },
                    },
                    impl_);
}

bool Cutter::fixes(const Point& x, double tol) const {
  return std::visit(Overloaded{
                        [&](const ExactCutter& c) { return contains(c.set, x, tol); },
                        [&](const SubgradientCutter& c) {
                          return c.f.value(x) <= tol * std::max(1.0, norm(x));
                        },
                        [&](const CustomCutter& c) {
                          require_dim(x, c.dim, c.name.c_str());
                          return c.in_fixed_set(x);
                        },
                    },
                    impl_);
}

}  // namespace relaxcut
