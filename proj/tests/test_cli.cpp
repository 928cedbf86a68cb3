#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cantor/cli.hpp"
#include "cantor/io.hpp"

using namespace cantor;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exit codes") {
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> table{
      {{}, cli::kExitDomain},
      {{"frobnicate"}, cli::kExitDomain},
      {{"digits", "--n", "10", "--base", "3", "--bogus", "1"}, cli::kExitDomain},
      {{"digits", "--n", "10"}, cli::kExitDomain},
      {{"kummer", "--p", "9", "--n", "4"}, cli::kExitDomain},
      {{"thickness", "--base", "2", "--digits", "0,1"}, cli::kExitDomain},
      {{"region", "--k1", "0", "--k2", "1"}, cli::kExitDomain},
      {{"region", "--format", "svg", "--resolution", "8"}, cli::kExitDomain},
      {{"thickness", "--base", "3", "--digits", "0,1,2", "--depth", "40"}, cli::kExitCapacity},
      {{"density", "--p", "3", "--q", "5", "--n", "30", "--budget", "10"}, cli::kExitCapacity},
      {{"kummer", "--p", "5", "--n", "3"}, cli::kExitOk},
  };
  for (const auto& c : table) {
    std::string joined;
    for (const auto& a : c.args) joined += a + ' ';
    auto r = run_cli(c.args);
    CHECK_MESSAGE(r.code == c.code, joined << "-> " << r.code << ": " << r.err);
    if (c.code != cli::kExitOk) CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("documented commands") {
  auto region = run_cli({"region", "--k1", "1", "--k2", "2.5"});
  REQUIRE(region.code == 0);
  CHECK(region.out.find("verdict: true") != std::string::npos);
  CHECK(region.out.find("margin: 0") != std::string::npos);

  auto triples = run_cli({"triples", "--limit", "650"});
  REQUIRE(triples.code == 0);
  auto rows = parse_csv(triples.out);
  REQUIRE(rows.size() > 1);
  CHECK(rows[0] == std::vector<std::string>{"x", "y", "z", "x_digits", "y_digits", "z_digits"});
  for (auto [x, y, z] : std::vector<std::array<const char*, 3>>{{"1", "4", "5"}, {"9", "16", "25"}, {"81", "69", "150"},
                                                                 {"325", "325", "650"}}) {
    bool found = false;
    for (const auto& row : rows) found = found || (row[0] == x && row[1] == y && row[2] == z);
    CHECK_MESSAGE(found, x << "+" << y << "=" << z);
  }

  auto th = run_cli({"thickness", "--base", "3", "--digits", "0,1", "--depth", "4", "--format", "json"});
  REQUIRE(th.code == 0);
  auto j = nlohmann::json::parse(th.out);
  CHECK(j["C"] == "1");
  CHECK(j["S"] == "1/2");
  CHECK(j["exactness"] == "exact");
}

TEST_CASE("global options after the subcommand") {
  auto a = run_cli({"--format", "json", "graham", "--limit", "100"});
  auto b = run_cli({"graham", "--limit", "100", "--format", "json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("csv and json carry the same rows") {
  const std::vector<std::vector<std::string>> commands{
      {"enumerate", "--bases", "3;5", "--digit-sets", "0,1;0,1,2", "--limit", "5000"},
      {"triples", "--limit", "2000"},
      {"density", "--p", "3", "--q", "5", "--n", "9"},
      {"graham", "--limit", "3000"},
      {"orbit", "--k-max", "500"},
  };
  for (const auto& cmd : commands) {
    auto csv_args = cmd, json_args = cmd;
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    json_args.insert(json_args.end(), {"--format", "json"});
    auto c = run_cli(csv_args), js = run_cli(json_args);
    REQUIRE(c.code == 0);
    REQUIRE(js.code == 0);
    auto rows = parse_csv(c.out);
    auto doc = nlohmann::ordered_json::parse(js.out);
    REQUIRE(doc.contains("rows"));
    const auto& header = rows.at(0);
    REQUIRE(doc["rows"].size() + 1 == rows.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& obj = doc["rows"][i - 1];
      REQUIRE(obj.size() == header.size());
      std::size_t col = 0;
      for (auto it = obj.begin(); it != obj.end(); ++it, ++col) {
        CHECK(it.key() == header[col]);
        if (it->is_number_float()) {
          CHECK(std::stod(rows[i][col]) == it->get<double>());
        } else {
          CHECK((it->is_string() ? it->get<std::string>() : it->dump()) == rows[i][col]);
        }
      }
    }
  }
}

TEST_CASE("csv quoting round trip") {
  std::vector<std::vector<std::string>> rows{{"a", "b,c", "say \"hi\""}, {"", "line\nbreak", "x"}};
  std::ostringstream out;
  for (const auto& r : rows) write_csv_row(out, r);
  CHECK(parse_csv(out.str()) == rows);
}

TEST_CASE("certificates from the command line revalidate") {
  auto r = run_cli({"certify", "--rule", "slice", "--S", "1/2,1/3,1/4", "--hulls", "0 1/6;0 1/12;0 1/20", "--max-gaps",
                    "1/18,1/24,3/100", "--v", "1,1,-5/2", "--a", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verdict: true") != std::string::npos);
}

TEST_CASE("svg sample classes") {
  auto svg = emit_region_svg(24);
  CHECK(svg.find("class=\"sample in\" cx=") != std::string::npos);
  auto find_sample = [&](const std::string& k1, const std::string& k2) {
    auto pos = svg.find("data-k1=\"" + k1 + "\" data-k2=\"" + k2 + "\"");
    REQUIRE(pos != std::string::npos);
    auto start = svg.rfind("<circle", pos);
    return svg.substr(start, pos - start);
  };
  CHECK(find_sample("1", "5/2").find("sample in") != std::string::npos);
  CHECK(find_sample("1", "1").find("sample out") != std::string::npos);
  CHECK(svg.find("class=\"region-D\"") != std::string::npos);
  CHECK(svg.find("log-cell inside") != std::string::npos);
}
