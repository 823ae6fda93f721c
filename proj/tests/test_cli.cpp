#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "kleinb/grid_io.hpp"
#include "kleinb/scattering.hpp"

using namespace kleinb;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const Run r = run(std::move(args));
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
      fields.push_back(line.substr(start, pos - start));
    fields.push_back(line.substr(start));
    rows.push_back(fields);
  }
  return rows;
}

// Number text as printed, so signed zeros survive. Arrays give both entries.
std::vector<std::string> raw_numbers(const std::string& text, const std::string& key) {
  const std::size_t at = text.find("\"" + key + "\": ");
  REQUIRE(at != std::string::npos);
  std::size_t begin = at + key.size() + 4;
  std::size_t end = text.find('\n', begin);
  std::string value = text.substr(begin, end - begin);
  if (!value.empty() && value.back() == ',') value.pop_back();
  if (value.front() != '[') return {value};
  const std::size_t comma = value.find(", ");
  return {value.substr(1, comma - 1), value.substr(comma + 2, value.size() - comma - 3)};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("kleinb_cli_test_" + name);
}

}  // namespace

TEST_CASE("amps: free propagation and total reflection") {
  json j = run_json({"amps", "--E", "2", "--V0", "0", "--b", "0.1", "--n", "1", "--spin", "up"});
  CHECK(j["T"][0] == 1.0);
  CHECK(j["T"][1] == 0.0);
  CHECK(j["budget"]["sum"] == 1.0);
  CHECK(j["regime"] == "II");

  j = run_json({"amps", "--E", "2", "--V0", "2", "--b", "0", "--n", "0", "--spin", "down"});
  CHECK(j["regime"] == "III");
  const double r2 = std::pow(j["R"][0].get<double>(), 2) + std::pow(j["R"][1].get<double>(), 2);
  CHECK(std::abs(r2 - 1.0) < 1e-15);
}

TEST_CASE("amps: the record carries the library values bit for bit") {
  const ChannelParams p = make_channel(2.0, 6.0, 0.2, Spin::Up, 1);
  for (const char* method : {"closed", "oracle"}) {
    const json j = run_json({"amps", "--E", "2", "--V0", "6", "--b", "0.2", "--n", "1", "--spin", "up", "--method", method});
    const ScatterAmplitudes a = std::string(method) == "oracle" ? solve_boundary_system(p) : amplitudes(p);
    const CurrentBudget b = current_budget(p, a);
    CHECK(j["R"][0].get<double>() == a.R.real());
    CHECK(j["Rp"][0].get<double>() == a.Rp.real());
    CHECK(j["T"][0].get<double>() == a.T.real());
    CHECK(j["Tp"][0].get<double>() == a.Tp.real());
    CHECK(j["budget"]["refl_flip"].get<double>() == b.refl_flip);
    CHECK(j["budget"]["sum"].get<double>() == b.sum);
    CHECK(j["abs_T_sq"].get<double>() == std::norm(a.T));
    CHECK(j["regime"] == "I");
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"amps", "--E", "2"}).code == cli::kOk);
  CHECK(run({"amps", "--V0", "1"}).code == cli::kValidation);
  CHECK(run({"amps", "--E", "0.5", "--V0", "1"}).code == cli::kValidation);
  CHECK(run({"amps", "--E", "2", "--V0", "1", "--b", "-1"}).code == cli::kValidation);
  CHECK(run({"amps", "--E", "2", "--V0", "1", "--spin", "sideways"}).code == cli::kValidation);
  CHECK(run({"amps", "--E", "2", "--V0", "1", "--n", "0", "--spin", "up"}).code == cli::kValidation);
  const Run singular = run({"amps", "--E", "2", "--V0", "3", "--b", "0.5", "--n", "1"});
  CHECK(singular.code == cli::kNumerical);
  CHECK(singular.err.find("SingularStep") != std::string::npos);
  CHECK(run({"bogus"}).code == cli::kValidation);
  CHECK(run({"sweep", "--axis", "V0"}).code == cli::kValidation);
  CHECK(run({"sweep", "--axis", "n", "--values", "1.5"}).code == cli::kValidation);
  CHECK(run({"sweep", "--axis", "V0", "--values", "1", "--columns", "nope"}).code == cli::kValidation);
  CHECK(run({"amps", "--help"}).code == cli::kOk);
}

TEST_CASE("sweep: regime transitions and the field-free flip column") {
  // M_1 = sqrt(1.4); E +- M_1 = 0.817, 3.183
  Run r = run({"sweep", "--E", "2", "--b", "0.2", "--n", "1", "--axis", "V0", "--start", "0", "--stop", "6", "--count",
               "61", "--jobs", "4"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 62);
  CHECK(rows[0].front() == "axis_value");
  CHECK(rows[0][1] == "regime");
  CHECK(rows[0].back() == "error");
  std::string order;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::string& regime = rows[i][1];
    if (regime.empty()) continue;
    if (order.empty() || order.substr(order.rfind(' ') + 1) != regime) order += (order.empty() ? "" : " ") + regime;
  }
  CHECK(order == "II III I");

  r = run({"sweep", "--E", "2", "--V0", "1", "--n", "2", "--spin", "down", "--axis", "b", "--values", "0,1e-6,1e-2",
           "--columns", "refl_flip,trans_flip"});
  rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1][1] == "0");
  CHECK(rows[1][2] == "0");
  CHECK(std::stod(rows[2][1]) > 0.0);
}

TEST_CASE("sweep: closed channels and singular points are flagged per row") {
  const Run r = run({"sweep", "--E", "2", "--b", "0.5", "--n", "1", "--axis", "V0", "--values", "1,3", "--columns", "sum"});
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][2].empty());
  CHECK(rows[2][1].empty());
  CHECK(rows[2][2] == "SingularStep");
  const Run closed = run({"sweep", "--V0", "0", "--b", "0.5", "--n", "4", "--axis", "E", "--values", "2,4"});
  rows = parse_csv(closed.out);
  CHECK(rows[1].back() == "ClosedChannel");
  CHECK(rows[2].back().empty());
}

TEST_CASE("sweep: deep steps approach the Klein limit") {
  const Run r = run({"sweep", "--E", "2.5", "--b", "0.3", "--n", "2", "--spin", "up", "--axis", "V0", "--values", "1e4",
                     "--columns", "re_T,im_T,re_Tp,im_Tp"});
  const auto rows = parse_csv(r.out);
  const double t2 = std::pow(std::stod(rows[1][1]), 2) + std::pow(std::stod(rows[1][2]), 2);
  const double tp2 = std::pow(std::stod(rows[1][3]), 2) + std::pow(std::stod(rows[1][4]), 2);
  const TransmissionProbabilities limit = klein_limit(Spin::Up, 2, 2.5, 0.3);
  CHECK(std::abs(t2 / limit.same - 1.0) < 1e-3);
  CHECK(std::abs(tp2 / limit.flip - 1.0) < 1e-3);
}

TEST_CASE("sweep rows round-trip through amps bit for bit") {
  struct Axis {
    std::string name;
    std::vector<std::string> range;
    std::vector<std::string> fixed;
  };
  const std::vector<Axis> axes = {
      {"V0", {"--start", "0", "--stop", "7.3", "--count", "23"}, {"--E", "2.2", "--b", "0.35", "--n", "2", "--spin", "down"}},
      {"E", {"--start", "1.3", "--stop", "9", "--count", "17"}, {"--V0", "3.1", "--b", "0.2", "--n", "1", "--spin", "up"}},
      {"b", {"--start", "0", "--stop", "0.9", "--count", "11"}, {"--E", "3", "--V0", "2.5", "--n", "3", "--spin", "up"}},
      {"n", {"--values", "0,1,2,3,5,8"}, {"--E", "3", "--V0", "1.7", "--b", "0.4", "--spin", "down"}},
  };
  const std::vector<std::string> columns = {"re_R", "im_R", "re_Rp", "im_Rp", "re_T", "im_T", "re_Tp", "im_Tp",
                                            "refl_same", "refl_flip", "trans_same", "trans_flip", "sum"};
  std::size_t compared = 0;
  for (const Axis& axis : axes) {
    std::vector<std::string> args = {"sweep", "--axis", axis.name, "--jobs", "3"};
    args.insert(args.end(), axis.range.begin(), axis.range.end());
    args.insert(args.end(), axis.fixed.begin(), axis.fixed.end());
    const Run r = run(args);
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (!row.back().empty()) continue;
      std::vector<std::string> single = {"amps", "--" + axis.name, row[0]};
      single.insert(single.end(), axis.fixed.begin(), axis.fixed.end());
      const Run one = run(single);
      REQUIRE(one.code == 0);
      CHECK(json::parse(one.out)["regime"] == row[1]);
      std::vector<std::string> got;
      for (const char* key : {"R", "Rp", "T", "Tp"}) {
        for (const std::string& v : raw_numbers(one.out, key)) got.push_back(v);
      }
      for (const char* key : {"refl_same", "refl_flip", "trans_same", "trans_flip", "sum"})
        got.push_back(raw_numbers(one.out, key).front());
      REQUIRE(got.size() == columns.size());
      for (std::size_t k = 0; k < columns.size(); ++k) {
        INFO(axis.name << "=" << row[0] << " " << columns[k]);
        CHECK(row[2 + k] == got[k]);
        // the text is %.17g, so equal text means equal bits
        const double a = std::strtod(row[2 + k].c_str(), nullptr);
        const double b = std::strtod(got[k].c_str(), nullptr);
        CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
      }
      ++compared;
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("sweep output does not depend on the thread count") {
  const std::vector<std::string> base = {"sweep", "--E", "2", "--b", "0.3", "--n", "3", "--axis", "V0", "--start", "0",
                                         "--stop", "8", "--count", "200"};
  auto with_jobs = [&](const char* jobs) {
    auto args = base;
    args.push_back("--jobs");
    args.push_back(jobs);
    return run(args).out;
  };
  CHECK(with_jobs("1") == with_jobs("7"));
}

TEST_CASE("config file fills options and flags override it") {
  const auto path = scratch("amps.cfg");
  {
    std::ofstream cfg(path);
    cfg << "# point\nE = 2\nV0 = 6\nb = 0.2\nspin = \"up\"\n";
  }
  json j = run_json({"amps", "--config", path.string()});
  CHECK(j["inputs"]["V0"] == 6.0);
  CHECK(j["regime"] == "I");
  j = run_json({"amps", "--config", path.string(), "--V0", "0.5"});
  CHECK(j["inputs"]["V0"] == 0.5);
  CHECK(j["regime"] == "II");
  {
    std::ofstream cfg(path);
    cfg << "axis = \"b\"\nvalues = [0, 0.5]\nE = 3\nV0 = 1\nn = 1\ncolumns = \"sum\"\n";
  }
  const Run r = run({"sweep", "--config", path.string()});
  CHECK(r.code == 0);
  CHECK(parse_csv(r.out).size() == 3);
  CHECK(run({"amps", "--config", scratch("missing.cfg").string(), "--E", "2"}).code == cli::kValidation);
  std::filesystem::remove(path);
}

TEST_CASE("klein-limit and filter-delay") {
  json j = run_json({"klein-limit", "--b", "0", "--E", "1.41421356"});
  CHECK(j["abs_T_sq"].get<double>() == doctest::Approx(0.585786).epsilon(1e-6));
  CHECK(j["abs_Tp_sq"] == 0.0);

  j = run_json({"filter-delay", "--g", "2"});
  CHECK(j["delay"] == 0.0);
  j = run_json({"filter-delay", "--si"});
  CHECK(j["delay"].get<double>() > 0.0);
  CHECK(j["delay_seconds"].get<double>() == doctest::Approx(j["delay"].get<double>() * 1.2880886677e-21).epsilon(1e-9));
  CHECK(run({"filter-delay", "--branch", "transmitted", "--V0", "2"}).code == cli::kValidation);
}

TEST_CASE("field writes a decaying Case III grid and a density slice") {
  const auto bin = scratch("field.bin");
  const auto csv = scratch("field.csv");
  const json j = run_json({"field", "--E", "2.5", "--V0", "3", "--b", "0.5", "--n", "2", "--ny", "65", "--nz", "97",
                           "--out", bin.string(), "--slice", csv.string()});
  CHECK(j["regime"] == "III");
  CHECK(j["continuity_residual"].get<double>() < 1e-10);
  std::ifstream in(bin, std::ios::binary);
  const GridData d = read_grid(in);
  CHECK(d.header.ny == 65);
  CHECK(d.header.nz == 97);
  const auto rows = parse_csv([&] {
    std::ifstream s(csv);
    return std::string(std::istreambuf_iterator<char>(s), {});
  }());
  REQUIRE(rows.size() == 98);
  double previous = INFINITY;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::stod(rows[i][0]) < 0.0) continue;
    const double rho = std::stod(rows[i][2]);
    CHECK(rho < previous);
    previous = rho;
  }
  CHECK(run({"field", "--E", "2", "--V0", "2", "--b", "0.1", "--out", bin.string()}).code == cli::kNumerical);
  std::filesystem::remove(bin);
  std::filesystem::remove(csv);
}

TEST_CASE("selftest passes quickly on the default seed") {
  const auto t0 = std::chrono::steady_clock::now();
  const Run r = run({"selftest"});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(r.code == 0);
  CHECK(seconds < 30.0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("6/6 checks passed") != std::string::npos);
}
