#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "kleinb/error.hpp"
#include "kleinb/grid_io.hpp"
#include "kleinb/landau.hpp"
#include "kleinb/sampling.hpp"
#include "kleinb/scattering.hpp"
#include "kleinb/selftest.hpp"
#include "kleinb/spin_filter.hpp"
#include "kleinb/wavefield.hpp"

namespace kleinb::cli {

namespace {

// Thrown for option combinations CLI11 cannot express; exits 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_number(double x) { return std::isfinite(x) ? fmt(x) : "null"; }

std::string json_pair(complex z) { return "[" + json_number(z.real()) + ", " + json_number(z.imag()) + "]"; }

std::string json_string(std::string_view s) { return "\"" + std::string(s) + "\""; }

// Flat JSON object, one key per line. Values are pre-rendered.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, const std::string& rendered) {
    entries_.emplace_back(key, rendered);
    return *this;
  }
  JsonObject& num(const std::string& key, double x) { return add(key, json_number(x)); }
  JsonObject& str(const std::string& key, std::string_view s) { return add(key, json_string(s)); }

  std::string render(int indent = 0) const {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    std::string s = "{\n";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      s += pad + json_string(entries_[i].first) + ": " + entries_[i].second;
      s += i + 1 < entries_.size() ? ",\n" : "\n";
    }
    return s + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct ChannelArgs {
  double energy = 0.0;
  double step_height = 0.0;
  double b = 0.0;
  int n = 1;
  std::string spin = "up";

  ChannelParams make() const { return make_channel(energy, step_height, b, parse_spin(spin), n); }

  JsonObject inputs() const {
    JsonObject o;
    o.num("E", energy).num("V0", step_height).num("b", b).add("n", std::to_string(n)).str("spin", spin);
    return o;
  }
};

void add_spin_option(CLI::App* app, std::string& spin) {
  app->add_option("--spin", spin, "incoming spin: up = (+, n-1), down = (-, n)")
      ->check(CLI::IsMember({"up", "down"}))
      ->capture_default_str();
}

void add_channel_options(CLI::App* app, ChannelArgs& c, bool energy_required = true) {
  auto* e = app->add_option("--E", c.energy, "total energy, units of mc^2");
  if (energy_required) e->required();
  app->add_option("--V0", c.step_height, "step height, units of mc^2")->capture_default_str();
  app->add_option("--b", c.b, "field strength hbar*omega/(mc^2)")->capture_default_str();
  app->add_option("--n", c.n, "Landau index of the incoming state")->capture_default_str();
  add_spin_option(app, c.spin);
}

// ---- single point ---------------------------------------------------------

enum class Method { Closed, Oracle };

struct Evaluation {
  ChannelParams params;
  ScatterAmplitudes amps;
  CurrentBudget budget;
};

Evaluation evaluate(const ChannelArgs& c, Method method) {
  const ChannelParams p = c.make();
  const ScatterAmplitudes a = method == Method::Oracle ? solve_boundary_system(p) : amplitudes(p);
  return {p, a, current_budget(p, a)};
}

void print_amps(std::ostream& out, const ChannelArgs& c, Method method) {
  const Evaluation ev = evaluate(c, method);
  const TransmissionProbabilities t = transmission_probabilities(ev.amps);
  JsonObject budget;
  budget.num("refl_same", ev.budget.refl_same)
      .num("refl_flip", ev.budget.refl_flip)
      .num("trans_same", ev.budget.trans_same)
      .num("trans_flip", ev.budget.trans_flip)
      .num("sum", ev.budget.sum);
  JsonObject o;
  o.add("inputs", c.inputs().render(2))
      .str("method", method == Method::Oracle ? "oracle" : "closed")
      .str("regime", to_string(ev.params.regime()))
      .add("R", json_pair(ev.amps.R))
      .add("Rp", json_pair(ev.amps.Rp))
      .add("T", json_pair(ev.amps.T))
      .add("Tp", json_pair(ev.amps.Tp))
      .add("budget", budget.render(2))
      .num("abs_T_sq", t.same)
      .num("abs_Tp_sq", t.flip);
  out << o.render() << '\n';
}

// ---- sweep ----------------------------------------------------------------

const std::vector<std::string> kSweepColumns = {"regime",  "re_R",      "im_R",      "re_Rp",      "im_Rp",
                                                "re_T",    "im_T",      "re_Tp",     "im_Tp",      "refl_same",
                                                "refl_flip", "trans_same", "trans_flip", "sum"};

std::vector<std::string> row_fields(const Evaluation& ev) {
  const ScatterAmplitudes& a = ev.amps;
  const CurrentBudget& b = ev.budget;
  return {std::string(to_string(ev.params.regime())),
          fmt(a.R.real()),
          fmt(a.R.imag()),
          fmt(a.Rp.real()),
          fmt(a.Rp.imag()),
          fmt(a.T.real()),
          fmt(a.T.imag()),
          fmt(a.Tp.real()),
          fmt(a.Tp.imag()),
          fmt(b.refl_same),
          fmt(b.refl_flip),
          fmt(b.trans_same),
          fmt(b.trans_flip),
          fmt(b.sum)};
}

struct SweepArgs {
  ChannelArgs fixed;
  std::string axis = "V0";
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
  std::vector<double> values;
  std::vector<std::string> columns;
  unsigned jobs = 1;
  std::string method = "closed";
};

std::vector<double> sweep_values(const SweepArgs& s) {
  if (!s.values.empty()) return s.values;
  if (s.count == 0) throw UsageError("sweep needs --values or --start/--stop/--count with count >= 1");
  std::vector<double> v(s.count);
  for (std::size_t i = 0; i < s.count; ++i) {
    v[i] = s.count == 1 ? s.start
                        : s.start + (s.stop - s.start) * static_cast<double>(i) / static_cast<double>(s.count - 1);
  }
  return v;
}

ChannelArgs at_axis(const SweepArgs& s, double x) {
  ChannelArgs c = s.fixed;
  if (s.axis == "E") c.energy = x;
  else if (s.axis == "V0") c.step_height = x;
  else if (s.axis == "b") c.b = x;
  else c.n = static_cast<int>(x);
  return c;
}

void run_sweep(std::ostream& out, const SweepArgs& s) {
  const std::vector<double> xs = sweep_values(s);
  if (s.axis == "n") {
    for (double x : xs) {
      if (!(x >= 0.0) || x != std::floor(x) || x > 1e9)
        throw UsageError("n-axis values must be non-negative integers (got " + fmt(x) + ")");
    }
  }
  std::vector<std::size_t> selected;
  const std::vector<std::string> wanted = s.columns.empty() ? kSweepColumns : s.columns;
  for (const std::string& name : wanted) {
    const auto it = std::find(kSweepColumns.begin(), kSweepColumns.end(), name);
    if (it == kSweepColumns.end()) throw UsageError("unknown column '" + name + "'");
    selected.push_back(static_cast<std::size_t>(it - kSweepColumns.begin()));
  }
  const Method method = s.method == "oracle" ? Method::Oracle : Method::Closed;

  std::vector<std::string> rows(xs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < xs.size(); i = next++) {
      std::string row = fmt(xs[i]);
      std::string error;
      std::vector<std::string> fields(kSweepColumns.size());
      try {
        fields = row_fields(evaluate(at_axis(s, xs[i]), method));
      } catch (const ScatterError& e) {
        error = std::string(to_string(e.code()));
      }
      for (std::size_t k : selected) row += "," + fields[k];
      rows[i] = row + "," + error + "\n";
    }
  };
  const unsigned jobs = std::clamp<unsigned>(s.jobs, 1, static_cast<unsigned>(std::max<std::size_t>(xs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  out << "axis_value";
  for (std::size_t k : selected) out << ',' << kSweepColumns[k];
  out << ",error\n";
  for (const std::string& r : rows) out << r;
}

// ---- regime map -----------------------------------------------------------

struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  double at(std::size_t i) const {
    return count == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

void add_range_options(CLI::App* app, const std::string& name, Range& r) {
  app->add_option("--" + name + "-min", r.min)->required();
  app->add_option("--" + name + "-max", r.max)->required();
  app->add_option("--" + name + "-count", r.count)->required()->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
}

void run_regime_map(std::ostream& out, const ChannelArgs& c, const Range& e_range, const Range& v_range) {
  if (e_range.count * v_range.count > kMaxGridPoints) throw ScatterError(ErrorCode::GridTooLarge, "regime map too large");
  out << "E,V0,regime\n";
  for (std::size_t i = 0; i < e_range.count; ++i) {
    for (std::size_t j = 0; j < v_range.count; ++j) {
      ChannelArgs point = c;
      point.energy = e_range.at(i);
      point.step_height = v_range.at(j);
      std::string label;
      try {
        label = std::string(to_string(point.make().regime()));
      } catch (const ScatterError& err) {
        if (err.code() != ErrorCode::ClosedChannel) throw;
        label = "closed";
      }
      out << fmt(point.energy) << ',' << fmt(point.step_height) << ',' << label << '\n';
    }
  }
}

// ---- field ----------------------------------------------------------------

struct FieldArgs {
  ChannelArgs channel;
  double kx = 0.0;
  std::optional<double> y_min, y_max, z_min, z_max;
  std::optional<std::size_t> ny, nz;
  std::string out_path;
  std::string slice_path;
};

void run_field(std::ostream& out, const FieldArgs& f) {
  const ChannelParams p = f.channel.make();
  const ScatterAmplitudes a = amplitudes(p);
  GridSpec g = default_grid(p, f.kx);
  if (f.y_min) g.y_min = *f.y_min;
  if (f.y_max) g.y_max = *f.y_max;
  if (f.z_min) g.z_min = *f.z_min;
  if (f.z_max) g.z_max = *f.z_max;
  if (f.ny) g.ny = *f.ny;
  if (f.nz) g.nz = *f.nz;
  const SpinorField field = assemble_field(p, a, g, f.kx);

  std::ofstream bin(f.out_path, std::ios::binary);
  if (!bin) throw UsageError("cannot open " + f.out_path + " for writing");
  write_grid(bin, field);
  if (!bin.flush()) throw UsageError("write to " + f.out_path + " failed");

  const std::string slice_path = f.slice_path.empty() ? f.out_path + ".csv" : f.slice_path;
  std::ofstream csv(slice_path);
  if (!csv) throw UsageError("cannot open " + slice_path + " for writing");
  // Row nearest the guiding center, plus the transverse integral.
  std::size_t center = 0;
  for (std::size_t iy = 1; iy < g.ny; ++iy) {
    if (std::abs(g.y(iy) - field.guiding_center()) < std::abs(g.y(center) - field.guiding_center())) center = iy;
  }
  csv << "z,rho_center,rho_integrated\n";
  for (std::size_t iz = 0; iz < g.nz; ++iz)
    csv << fmt(g.z(iz)) << ',' << fmt(field.density(center, iz)) << ',' << fmt(integrated_density(field, iz)) << '\n';
  if (!csv.flush()) throw UsageError("write to " + slice_path + " failed");

  JsonObject o;
  o.add("inputs", f.channel.inputs().render(2))
      .str("regime", to_string(p.regime()))
      .add("ny", std::to_string(g.ny))
      .add("nz", std::to_string(g.nz))
      .num("guiding_center", field.guiding_center())
      .num("continuity_residual", continuity_residual(field));
  if (p.regime() == Regime::CaseIII) {
    o.num("decay_rate_fit", fitted_decay_rate(field)).num("decay_rate_expected", 2.0 * std::abs(momentum_right(p)));
  }
  o.str("grid_file", f.out_path).str("slice_file", slice_path);
  out << o.render() << '\n';
}

// ---- config file ----------------------------------------------------------

bool given(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Flat `key = value` lines become `--key value` for every key not already on
// the command line, so flags override the file. A [section] naming another
// subcommand is skipped.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  const std::string& sub = args.front();
  std::vector<std::string> extra;
  for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_config(in)) {
    if (!item.parents.empty() && item.parents.front() != sub) continue;
    if (item.name == "++" || item.name == "--") continue;  // section markers
    const std::string flag = "--" + item.name;
    if (given(args, flag)) continue;
    if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
      if (item.inputs[0] == "true") extra.push_back(flag);
      continue;
    }
    std::string joined;
    for (const std::string& v : item.inputs) joined += (joined.empty() ? "" : ",") + v;
    extra.push_back(flag);
    extra.push_back(joined);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relativistic scattering off a potential step in a parallel magnetic field"};
  app.name("kleinb");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string config_path;
  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value file; flags override it");
    return sub;
  };

  ChannelArgs amps_args;
  std::string amps_method = "closed";
  auto* amps_cmd = with_config(app.add_subcommand("amps", "amplitudes and current budget at one point (JSON)"));
  add_channel_options(amps_cmd, amps_args);
  amps_cmd->add_option("--method", amps_method, "closed form or 4x4 boundary solve")
      ->check(CLI::IsMember({"closed", "oracle"}))
      ->capture_default_str();

  SweepArgs sweep;
  auto* sweep_cmd = with_config(app.add_subcommand("sweep", "amplitudes along one parameter axis (CSV)"));
  add_channel_options(sweep_cmd, sweep.fixed, false);
  sweep.fixed.energy = 2.0;
  sweep_cmd->add_option("--axis", sweep.axis, "swept parameter")
      ->check(CLI::IsMember({"E", "V0", "b", "n"}))
      ->capture_default_str();
  auto* start = sweep_cmd->add_option("--start", sweep.start);
  auto* stop = sweep_cmd->add_option("--stop", sweep.stop);
  auto* count = sweep_cmd->add_option("--count", sweep.count)->check(CLI::PositiveNumber);
  auto* values = sweep_cmd->add_option("--values", sweep.values, "explicit axis values")->delimiter(',');
  values->excludes(start)->excludes(stop)->excludes(count);
  start->needs(stop)->needs(count);
  sweep_cmd->add_option("--columns", sweep.columns, "subset of output columns")->delimiter(',');
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  sweep_cmd->add_option("--method", sweep.method)->check(CLI::IsMember({"closed", "oracle"}))->capture_default_str();

  ChannelArgs map_args;
  Range e_range, v_range;
  auto* map_cmd = with_config(app.add_subcommand("regime-map", "regime on an (E, V0) grid (CSV)"));
  map_cmd->add_option("--b", map_args.b)->capture_default_str();
  map_cmd->add_option("--n", map_args.n)->capture_default_str();
  add_spin_option(map_cmd, map_args.spin);
  add_range_options(map_cmd, "E", e_range);
  add_range_options(map_cmd, "V0", v_range);

  FieldArgs field;
  auto* field_cmd = with_config(app.add_subcommand("field", "spinor field on a (y, z) grid (binary + CSV slice)"));
  add_channel_options(field_cmd, field.channel);
  field_cmd->add_option("--kx", field.kx, "transverse momentum; sets the guiding center")->capture_default_str();
  field_cmd->add_option("--y-min", field.y_min);
  field_cmd->add_option("--y-max", field.y_max);
  field_cmd->add_option("--z-min", field.z_min);
  field_cmd->add_option("--z-max", field.z_max);
  field_cmd->add_option("--ny", field.ny);
  field_cmd->add_option("--nz", field.nz);
  field_cmd->add_option("--out", field.out_path, "binary grid file")->required();
  field_cmd->add_option("--slice", field.slice_path, "density slice CSV (default: <out>.csv)");

  ChannelArgs klein;
  auto* klein_cmd = with_config(app.add_subcommand("klein-limit", "|T|^2, |T'|^2 as V0 -> infinity (JSON)"));
  add_channel_options(klein_cmd, klein);

  FilterSetup filter;
  std::string branch = "reflected";
  bool si = false;
  auto* filter_cmd = with_config(app.add_subcommand("filter-delay", "arrival-time split from the anomalous moment (JSON)"));
  filter_cmd->add_option("--E", filter.energy)->capture_default_str();
  filter_cmd->add_option("--n", filter.n)->capture_default_str();
  filter_cmd->add_option("--b", filter.b)->capture_default_str();
  filter_cmd->add_option("--g", filter.g)->capture_default_str();
  filter_cmd->add_option("--d", filter.distance, "flight distance, Compton units")->capture_default_str();
  filter_cmd->add_option("--branch", branch)
      ->check(CLI::IsMember({"reflected", "transmitted"}))
      ->capture_default_str();
  filter_cmd->add_option("--V0", filter.step_height, "step height (transmitted branch)")->capture_default_str();
  filter_cmd->add_flag("--si", si, "also report seconds");

  SelftestOptions self;
  std::optional<std::uint64_t> seed;
  auto* self_cmd = with_config(app.add_subcommand("selftest", "invariant suite on a seeded grid"));
  self_cmd->add_option("--points", self.points)->check(CLI::Range(std::size_t{3}, std::size_t{10000000}))->capture_default_str();
  self_cmd->add_option("--seed", seed, "overrides KLEINB_SEED");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (amps_cmd->parsed()) {
      print_amps(out, amps_args, amps_method == "oracle" ? Method::Oracle : Method::Closed);
    } else if (sweep_cmd->parsed()) {
      run_sweep(out, sweep);
    } else if (map_cmd->parsed()) {
      run_regime_map(out, map_args, e_range, v_range);
    } else if (field_cmd->parsed()) {
      run_field(out, field);
    } else if (klein_cmd->parsed()) {
      const TransmissionProbabilities t = klein_limit(parse_spin(klein.spin), klein.n, klein.energy, klein.b);
      JsonObject o;
      o.add("inputs", klein.inputs().render(2)).num("abs_T_sq", t.same).num("abs_Tp_sq", t.flip);
      out << o.render() << '\n';
    } else if (filter_cmd->parsed()) {
      filter.branch = branch == "transmitted" ? FilterBranch::Transmitted : FilterBranch::Reflected;
      const SplitMomenta k = split_momenta(filter);
      const double delay = arrival_delay(filter);
      JsonObject o;
      o.num("k_up", k.up).num("k_down", k.down).num("delay", delay).num("delay_first_order",
                                                                          arrival_delay_first_order(filter));
      if (si) o.num("delay_seconds", to_seconds(delay));
      out << o.render() << '\n';
    } else if (self_cmd->parsed()) {
      self.seed = seed ? *seed : seed_from_env(kDefaultSeed);
      const auto t0 = std::chrono::steady_clock::now();
      const std::vector<CheckResult> checks = run_selftest(self);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::size_t passed = 0;
      for (const CheckResult& c : checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%s %-16s worst=%.3e tol=%.1e points=%zu\n", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.worst, c.tolerance, c.points);
        out << line;
        passed += c.passed ? 1 : 0;
      }
      char summary[128];
      std::snprintf(summary, sizeof summary, "%zu/%zu checks passed, seed %llu, %.2f s\n", passed, checks.size(),
                    static_cast<unsigned long long>(self.seed), seconds);
      out << summary;
      return passed == checks.size() ? kOk : kSelftestFailed;
    }
    return kOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  } catch (const ScatterError& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kNumerical : kValidation;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace kleinb::cli
