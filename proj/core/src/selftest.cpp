#include "kleinb/selftest.hpp"

#include <algorithm>
#include <cmath>

#include "kleinb/scattering.hpp"

namespace kleinb {

namespace {

double component_gap(const ScatterAmplitudes& a, const ScatterAmplitudes& b) {
  const complex lhs[] = {a.R, a.Rp, a.T, a.Tp};
  const complex rhs[] = {b.R, b.Rp, b.T, b.Tp};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / std::max(1.0, std::abs(rhs[i])));
  return worst;
}

CheckResult finish(std::string name, double worst, double tol, std::size_t points, bool extra = true) {
  return {std::move(name), extra && worst < tol, worst, tol, points};
}

ChannelParams with_spin(const ChannelParams& p, Spin spin) {
  return make_channel(p.energy(), p.step_height(), p.field().b(), spin, p.n());
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  const std::vector<ChannelParams> grid = sample_grid(options.seed, options.points);
  std::vector<CheckResult> out;

  double unitarity = 0.0;
  double oracle = 0.0;
  std::size_t oracle_points = 0;
  for (const ChannelParams& p : grid) {
    const ScatterAmplitudes a = amplitudes(p);
    unitarity = std::max(unitarity, std::abs(current_budget(p, a).sum - 1.0));
    try {
      oracle = std::max(oracle, component_gap(a, solve_boundary_system(p)));
      ++oracle_points;
    } catch (const std::exception&) {
      oracle = std::max(oracle, 1.0);
    }
  }
  out.push_back(finish("unitarity |sum - 1|", unitarity, 1e-12, grid.size()));
  out.push_back(finish("closed form vs boundary solve", oracle, 1e-12, oracle_points));

  // Field-free reduction.
  double h0 = 0.0;
  double total_reflection = 0.0;
  bool flips_zero = true;
  std::size_t h0_points = 0;
  for (const ChannelParams& p : grid) {
    if (std::abs(p.energy() + 1.0 - p.step_height()) < 1e-9 * (1.0 + p.step_height())) continue;
    const ChannelParams free = make_channel(p.energy(), p.step_height(), 0.0, Spin::Down, 0);
    const ScatterAmplitudes a = amplitudes(free);
    const ScatterAmplitudes ref = h0_amplitudes(p.energy(), p.step_height());
    flips_zero = flips_zero && a.Rp == complex(0.0) && a.Tp == complex(0.0);
    h0 = std::max(h0, component_gap(a, ref));
    if (a.regime == Regime::CaseIII) total_reflection = std::max(total_reflection, std::abs(std::norm(a.R) - 1.0));
    ++h0_points;
  }
  out.push_back(finish("H=0: R, T match field-free formulas", h0, 1e-12, h0_points, flips_zero));
  out.push_back(finish("H=0 Case III: |R|^2 = 1", total_reflection, 1e-14, h0_points));

  // No-flip anchors and b^{1/2} scaling.
  bool lowest_clean = true;
  double slope_gap = 0.0;
  std::size_t slope_points = 0;
  for (std::size_t i = 0; i < grid.size(); i += 10) {
    const ChannelParams& p = grid[i];
    const ChannelParams lowest = make_channel(p.energy(), p.step_height(), p.field().b(), Spin::Down, 0);
    const ScatterAmplitudes a = amplitudes(lowest);
    lowest_clean = lowest_clean && a.Rp == complex(0.0) && a.Tp == complex(0.0);
    if (p.n() == 0 || p.step_height() == 0.0) continue;
    const double e = std::max(p.energy(), 1.5);
    const double b_lo = 1e-8;
    const double b_hi = 1e-6;
    const auto lo = amplitudes(make_channel(e, p.step_height(), b_lo, p.spin(), p.n()));
    const auto hi = amplitudes(make_channel(e, p.step_height(), b_hi, p.spin(), p.n()));
    const double span = std::log(b_hi / b_lo);
    slope_gap = std::max(slope_gap, std::abs(std::log(std::abs(hi.Rp) / std::abs(lo.Rp)) / span - 0.5));
    slope_gap = std::max(slope_gap, std::abs(std::log(std::abs(hi.Tp) / std::abs(lo.Tp)) / span - 0.5));
    ++slope_points;
  }
  out.push_back(finish("no flip for (-,0); flip ~ b^{1/2} slope", slope_gap, 0.01, slope_points, lowest_clean));

  // Spin symmetry.
  double symmetry = 0.0;
  bool signs_opposite = true;
  std::size_t pairs = 0;
  for (const ChannelParams& p : grid) {
    if (p.n() < 1) continue;
    const ChannelParams up = with_spin(p, Spin::Up);
    const ChannelParams down = with_spin(p, Spin::Down);
    const ScatterAmplitudes au = amplitudes(up);
    const ScatterAmplitudes ad = amplitudes(down);
    const CurrentBudget bu = current_budget(up, au);
    const CurrentBudget bd = current_budget(down, ad);
    symmetry = std::max({symmetry, std::abs(bu.refl_same - bd.refl_same), std::abs(bu.refl_flip - bd.refl_flip),
                         std::abs(bu.trans_same - bd.trans_same), std::abs(bu.trans_flip - bd.trans_flip)});
    signs_opposite = signs_opposite && au.Rp == -ad.Rp && au.Tp == -ad.Tp;
    ++pairs;
  }
  out.push_back(finish("spin symmetry of budgets", symmetry, 1e-14, pairs, signs_opposite));
  return out;
}

}  // namespace kleinb
