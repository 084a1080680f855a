#pragma once

#include <functional>
#include <vector>

#include "contlogic/synth/grid_function.hpp"
#include "contlogic/unitval/connective.hpp"

namespace testsupport {

using GridFn = std::function<contlogic::UnitValue(const std::vector<contlogic::UnitValue>&)>;

struct SynthTarget {
  const char* name;
  contlogic::GridFunction grid;
  contlogic::UnitValue eps;
};

inline const GridFn kIdentity = [](const std::vector<contlogic::UnitValue>& t) { return t[0]; };
inline const GridFn kDouble = [](const std::vector<contlogic::UnitValue>& t) { return contlogic::plus_trunc(t[0], t[0]); };

/// Grid targets with the epsilon each is synthesized to.
inline std::vector<SynthTarget> synth_targets() {
  using namespace contlogic;
  auto uv = [](std::int64_t p, std::int64_t q) { return UnitValue(Rational(p, q)); };
  auto g1 = [&](const GridFn& f, std::int64_t den) { return GridFunction::tabulate(1, uv(1, den), f); };
  auto g2 = [&](const GridFn& f, std::int64_t den) { return GridFunction::tabulate(2, uv(1, den), f); };
  return {
      {"identity", g1(kIdentity, 8), uv(1, 8)},
      {"double", g1(kDouble, 8), uv(1, 8)},
      {"third", g1([&](auto&) { return uv(1, 3); }, 8), uv(1, 16)},
      {"tent", g1([](auto& t) { return vmin(plus_trunc(t[0], t[0]), plus_trunc(neg(t[0]), neg(t[0]))); }, 8), uv(1, 8)},
      {"square", g1([](auto& t) { return UnitValue(t[0].value() * t[0].value()); }, 16), uv(1, 32)},
      {"steep", g1([&](auto& t) { return t[0] < uv(1, 2) ? UnitValue::zero() : UnitValue::one(); }, 8), uv(1, 4)},
      {"max", g2([](auto& t) { return vmax(t[0], t[1]); }, 4), uv(1, 8)},
      {"product", g2([](auto& t) { return UnitValue(t[0].value() * t[1].value()); }, 4), uv(1, 16)},
      {"distance", g2([](auto& t) { return absdiff(t[0], t[1]); }, 4), uv(1, 4)},
  };
}

}  // namespace testsupport
