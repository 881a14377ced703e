#include <doctest.h>

#include <algorithm>
#include <tuple>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "kdscope/io.hpp"

using namespace kdscope;
using testing::I;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

ArtifactMeta meta() { return {"test", {}, {}}; }

SearchConfig quick() {
  SearchConfig cfg;
  cfg.restarts = 8;
  return cfg;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("doubles round-trip through the text format") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    json arr = json::array();
    std::vector<double> values{0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23};
    for (int k = 0; k < 200; ++k) values.push_back(dist(rng));
    for (double v : values) arr.push_back(v);
    const auto text = dump_json(arr);
    const auto back = json::parse(text);
    for (std::size_t k = 0; k < values.size(); ++k) CHECK(back[k].get<double>() == values[k]);
    CHECK(dump_json(json(0.1)) == "1.0000000000000001e-01");
    CHECK(dump_json(json(3)) == "3");
    CHECK(dump_json(json(std::nan(""))) == "null");
  }

  TEST_CASE("matrix and state schemas") {
    const auto m = matrix_to_json(dft(3).matrix());
    CHECK(m["d"] == 3);
    CHECK(m["rows"].size() == 3);
    CHECK(m["rows"][1][1].size() == 2);
    CHECK(max_abs_diff(matrix_from_json(json::parse(dump_json(m))), dft(3).matrix()) == 0.0);

    const auto psi = random_state(4, 2);
    const auto s = state_to_json(psi);
    CHECK(s["d"] == 4);
    const auto back = state_from_json(json::parse(dump_json(s)));
    CHECK(std::ranges::equal(back.amps(), psi.amps()));

    CHECK(testing::error_code_of([] { matrix_from_json(json::parse(R"({"rows": []})")); }) == ErrorCode::ParseError);
    CHECK(testing::error_code_of([] { state_from_json(json::parse(R"({"d": 2, "amps": [[1, 0]]})")); }) ==
          ErrorCode::ParseError);
    CHECK(testing::error_code_of([] { state_from_json(json::parse(R"({"d": 1, "amps": [[1, 0, 0]]})")); }) ==
          ErrorCode::ParseError);
    CHECK(testing::error_code_of([] { state_from_json(json::parse(R"({"d": 1, "amps": [[2, 0]]})")); }) ==
          ErrorCode::NotNormalized);
  }

  TEST_CASE("state files") {
    const auto path = (std::filesystem::temp_directory_path() / "kdscope_state.json").string();
    const auto psi = mub4_edge_states(I).first;
    save_state(psi, path);
    CHECK(std::ranges::equal(load_state(path).amps(), psi.amps()));
    CHECK(testing::error_code_of([] { write_text_file("/nonexistent/dir/x", "y"); }) == ErrorCode::IoError);
  }

  TEST_CASE("report JSON field names") {
    const auto j = report_to_json(incompat_report(mub4(I)), meta());
    for (const char* key : {"m_ab", "M_ab", "stroinc", "coinc", "coinc_witness", "n_min", "n_min_lower_bound", "edge",
                            "legacy_bound", "meta"})
      CHECK(j.contains(key));
    CHECK(j["coinc_witness"]["S"] == json::array({2, 3}));
    CHECK(j["n_min"] == 4);
    CHECK(report_to_json(incompat_report(dft(5)), meta())["coinc_witness"].is_null());
  }

  TEST_CASE("diagram CSV") {
    const auto dg = uncertainty_diagram(mub4(I), quick());
    const auto csv = diagram_csv(dg, meta());
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.back() == '\n');
    std::vector<std::string> data;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
      if (line.starts_with("#")) {
        CHECK_FALSE(header_seen);
        continue;
      }
      if (!header_seen) {
        CHECK(line == "n_a,n_b,classification,min_ncc_found,cells");
        header_seen = true;
        continue;
      }
      data.push_back(line);
    }
    CHECK(data.size() == dg.points.size());
    for (std::size_t k = 1; k < data.size(); ++k) {
      int a0, b0, a1, b1;
      std::sscanf(data[k - 1].c_str(), "%d,%d", &a0, &b0);
      std::sscanf(data[k].c_str(), "%d,%d", &a1, &b1);
      CHECK(std::pair(a0, b0) < std::pair(a1, b1));
    }
    CHECK(csv.find("seed=0") != std::string::npos);
    CHECK(csv.find("tau_class=") != std::string::npos);
    CHECK(csv.find("# kdscope ") == 0);

    const auto grid = diagram_csv(dg, meta(), true);
    CHECK(count(grid, "EMPTY") == 16 - static_cast<int>(dg.points.size()));
  }

  TEST_CASE("diagram JSON carries witnesses") {
    const auto dg = uncertainty_diagram(mub4(I), quick());
    const auto j = diagram_to_json(dg, meta());
    CHECK(j["points"].size() == dg.points.size());
    bool witness = false;
    for (const auto& p : j["points"])
      if (p["classification"] == "CLASSICAL") witness = witness || p["classical_witness"].contains("amps");
    CHECK(witness);
    CHECK(j["meta"]["tolerances"]["eta"] == 1e-9);
  }

  TEST_CASE("SVG") {
    const auto dg = uncertainty_diagram(mub4(I), quick());
    const auto svg = diagram_svg(dg, meta());
    CHECK(svg.find("width=\"600\" height=\"600\"") != std::string::npos);
    CHECK(count(svg, "class=\"marker\"") == static_cast<int>(dg.points.size()));
    CHECK(count(svg, "<rect class=\"marker\"") == 3);
    CHECK(count(svg, "class=\"hyperbola\"") == 1);
    CHECK(count(svg, "stroke-dasharray:6,4") == 1);
    CHECK(count(svg, "class=\"edge\"") == 1);
    CHECK(count(svg, "stroke-dasharray:8,3,2,3") == 1);

    Diagram empty;
    empty.d = 4;
    empty.hyperbola_constant = 4.0;
    empty.edge = 5;
    const auto bare = diagram_svg(empty, meta());
    CHECK(count(bare, "class=\"marker\"") == 0);
    CHECK(count(bare, "class=\"hyperbola\"") == 1);
    CHECK(count(bare, "class=\"edge\"") == 1);

    const auto spin = uncertainty_diagram(spin_transition(1.0), quick());
    const auto spin_svg = diagram_svg(spin, meta());
    CHECK(count(spin_svg, "class=\"edge\"") == 1);
  }
}
