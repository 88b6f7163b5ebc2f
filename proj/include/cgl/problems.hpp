#pragma once

// Built-in test problems: initial conditions, boundary handling, and the
// exact solutions of the two smooth accuracy cases.

#include <cmath>
#include <optional>
#include <string>

#include "cgl/errors.hpp"
#include "cgl/scheme.hpp"
#include "cgl/state.hpp"
#include "cgl/time_integrator.hpp"

namespace cgl {

enum class ProblemId : std::uint8_t {
  Accuracy,
  AlfvenWave,
  ReconnectionLayer,
  RP1_BrioWu,
  RP2_RyuJones,
  RP3,
  RP4,
  RP5,
};

enum class BcKind : std::uint8_t { Periodic, Outflow };

struct ProblemSpec {
  ProblemId id = ProblemId::Accuracy;
  double xa = 0.0, xb = 1.0;
  BcKind bc = BcKind::Periodic;
  double Bx = 0.0;
  int default_n = 100;
  double t_end = 1.0;
  double cfl = 0.8;
  std::optional<double> tau;  // default relaxation setting (nullopt = disabled)
};

struct AlfvenParams {
  double deltaB = 0.1;              // B_y amplitude is sqrt(4 pi) * deltaB
  double k = 2.0 * M_PI;            // one wavelength on the unit domain
  double Va_star = 1.0;             // sqrt(epsilon) * V_A with the paper values
  double epsilon = 1.0;
  double deltaU() const { return deltaB; }  // Walen relation with these values
};

inline const double kSqrt4Pi = std::sqrt(kFourPi);

inline ProblemSpec problem_spec(ProblemId id) {
  ProblemSpec p;
  p.id = id;
  switch (id) {
    case ProblemId::Accuracy:
      p.xa = 0.0; p.xb = 1.0; p.bc = BcKind::Periodic;
      p.Bx = 1.0; p.default_n = 160; p.t_end = 2.0; p.cfl = 0.3;
      break;
    case ProblemId::AlfvenWave:
      p.xa = 0.0; p.xb = 1.0; p.bc = BcKind::Periodic;
      p.Bx = kSqrt4Pi; p.default_n = 160; p.t_end = 5.0; p.cfl = 0.3;
      break;
    case ProblemId::ReconnectionLayer:
      p.xa = -200.0; p.xb = 200.0; p.bc = BcKind::Outflow;
      p.Bx = 0.05 * kSqrt4Pi; p.default_n = 2000; p.t_end = 3500.0; p.cfl = 0.8;
      break;
    case ProblemId::RP1_BrioWu:
      p.xa = -1.0; p.xb = 1.0; p.bc = BcKind::Outflow;
      p.Bx = 0.75 * kSqrt4Pi; p.default_n = 800; p.t_end = 0.2; p.cfl = 0.8;
      break;
    case ProblemId::RP2_RyuJones:
      p.xa = -0.5; p.xb = 0.5; p.bc = BcKind::Outflow;
      p.Bx = 2.0; p.default_n = 800; p.t_end = 0.2; p.cfl = 0.8;
      break;
    case ProblemId::RP3:
      p.xa = -0.5; p.xb = 0.5; p.bc = BcKind::Outflow;
      p.Bx = 3.899398; p.default_n = 800; p.t_end = 0.15; p.cfl = 0.8;
      break;
    case ProblemId::RP4:
      p.xa = -0.5; p.xb = 0.5; p.bc = BcKind::Outflow;
      p.Bx = 1.3 * kSqrt4Pi; p.default_n = 800; p.t_end = 0.15; p.cfl = 0.8;
      break;
    case ProblemId::RP5:
      p.xa = -0.5; p.xb = 0.5; p.bc = BcKind::Outflow;
      p.Bx = 1.0; p.default_n = 800; p.t_end = 0.1; p.cfl = 0.8;
      break;
  }
  return p;
}

inline ProblemId parse_problem(const std::string& name) {
  if (name == "accuracy") return ProblemId::Accuracy;
  if (name == "alfven") return ProblemId::AlfvenWave;
  if (name == "reconnection") return ProblemId::ReconnectionLayer;
  if (name == "rp1" || name == "briowu") return ProblemId::RP1_BrioWu;
  if (name == "rp2" || name == "ryujones") return ProblemId::RP2_RyuJones;
  if (name == "rp3") return ProblemId::RP3;
  if (name == "rp4") return ProblemId::RP4;
  if (name == "rp5") return ProblemId::RP5;
  throw UnknownProblem("unknown problem id '" + name + "'");
}

inline const char* problem_name(ProblemId id) {
  switch (id) {
    case ProblemId::Accuracy: return "accuracy";
    case ProblemId::AlfvenWave: return "alfven";
    case ProblemId::ReconnectionLayer: return "reconnection";
    case ProblemId::RP1_BrioWu: return "rp1";
    case ProblemId::RP2_RyuJones: return "rp2";
    case ProblemId::RP3: return "rp3";
    case ProblemId::RP4: return "rp4";
    case ProblemId::RP5: return "rp5";
  }
  return "?";
}

namespace detail {

inline PrimState riemann_ic(ProblemId id, double x) {
  auto mk = [](double rho, double ux, double uy, double uz, double pl, double pp,
               double By, double Bz) {
    return PrimState{rho, ux, uy, uz, pl, pp, By, Bz};
  };
  switch (id) {
    case ProblemId::RP1_BrioWu:
      return x <= 0.0 ? mk(1, 0, 0, 0, 1, 1, kSqrt4Pi, 0)
                      : mk(0.125, 0, 0, 0, 0.1, 0.1, -kSqrt4Pi, 0);
    case ProblemId::RP2_RyuJones:
      return x <= 0.0 ? mk(1.08, 1.2, 0.0, 0.0, 0.95, 0.95, 3.6, 2.0)
                      : mk(1, 0, 0, 0, 1, 1, 4, 2);
    case ProblemId::RP3:
      return x <= 0.0 ? mk(1.7, 0, 0, 0, 1.7, 1.7, 3.544908, 0)
                      : mk(0.2, 0, 0, -1.496891, 0.2, 0.2, 2.785898, 2.192064);
    case ProblemId::RP4:
      return x <= 0.0 ? mk(1, 0, 0, 0, 1, 1, kSqrt4Pi, 0)
                      : mk(0.4, 0, 0, 0, 0.4, 0.4, -kSqrt4Pi, 0);
    case ProblemId::RP5:
      return x <= 0.0 ? mk(1.0 / kFourPi, -1, 1, -1, 1, 1, -1, 1)
                      : mk(1.0 / kFourPi, -1, -1, -1, 1, 1, 1, 1);
    default:
      throw UnknownProblem("riemann_ic: not a Riemann problem");
  }
}

}  // namespace detail

//! Exact solution where available (Accuracy, AlfvenWave); the Alfvén wave with
//! these amplitudes propagates against Bx, so the phase is k(x + V*_A t).
inline PrimState exact_solution(ProblemId id, double x, double t) {
  if (id == ProblemId::Accuracy) {
    PrimState w;
    w.rho = 2.0 + std::sin(2.0 * M_PI * (x - t));
    w.ux = 1.0; w.uy = 0.0; w.uz = 0.0;
    w.p_par = 1.0; w.p_perp = 1.0;
    w.By = 1.0; w.Bz = 0.0;
    return w;
  }
  if (id == ProblemId::AlfvenWave) {
    const AlfvenParams a;
    const double phase = a.k * (x + a.Va_star * t);
    PrimState w;
    w.rho = 1.0; w.p_par = 1.0; w.p_perp = 1.0;
    w.ux = 0.0;
    w.uy = a.deltaU() * std::sin(phase);
    w.uz = a.deltaU() * std::cos(phase);
    w.By = kSqrt4Pi * a.deltaB * std::sin(phase);
    w.Bz = kSqrt4Pi * a.deltaB * std::cos(phase);
    return w;
  }
  throw NoExactSolution(std::string("no exact solution for ") + problem_name(id));
}

inline PrimState initial_state(ProblemId id, double x) {
  switch (id) {
    case ProblemId::Accuracy:
    case ProblemId::AlfvenWave:
      return exact_solution(id, x, 0.0);
    case ProblemId::ReconnectionLayer: {
      // Harris sheet with uniform guide field, isothermal completion:
      // total pressure balance with lobe density 1, beta_lobe = 0.25.
      const double phi = M_PI / 6.0;
      const double p_lobe = 0.125;
      const double th = std::tanh(x);
      const double sech2 = 1.0 - th * th;
      const double p = p_lobe + 0.5 * std::cos(phi) * std::cos(phi) * sech2;
      PrimState w;
      w.rho = p / p_lobe;
      w.ux = w.uy = w.uz = 0.0;
      w.p_par = w.p_perp = p;
      w.By = kSqrt4Pi * std::cos(phi) * th;
      w.Bz = kSqrt4Pi * std::sin(phi);
      return w;
    }
    default:
      return detail::riemann_ic(id, x);
  }
}

//! Zone-center point values of the initial fields plus run defaults.
struct ProblemSetup {
  ProblemSpec spec;
  GridState grid;
  GlobalField field;
  StepControl control;
};

inline ProblemSetup init_problem(const ProblemSpec& spec, int n) {
  if (n < 10) throw ConfigError("init_problem: n must be >= 10");
  ProblemSetup setup{spec, GridState(n, spec.xa, spec.xb), GlobalField{spec.Bx}, {}};
  for (int i = 0; i < n; ++i)
    setup.grid.z(i) = prim_to_cons(initial_state(spec.id, setup.grid.xc(i)), setup.field);
  setup.control.cfl = spec.cfl;
  setup.control.t = 0.0;
  setup.control.t_end = spec.t_end;
  return setup;
}

inline void apply_bc(GridState& grid, BcKind bc) {
  const int n = grid.n;
  for (int k = 1; k <= GridState::kGhost; ++k) {
    if (bc == BcKind::Periodic) {
      grid.z(-k) = grid.z(n - k);
      grid.z(n - 1 + k) = grid.z(k - 1);
    } else {
      grid.z(-k) = grid.z(0);
      grid.z(n - 1 + k) = grid.z(n - 1);
    }
  }
}

}  // namespace cgl
