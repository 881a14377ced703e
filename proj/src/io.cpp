#include "kdscope/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kdscope/error.hpp"
#include "kdscope/version.hpp"

namespace kdscope {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

bool is_primitive(const json& j) { return !j.is_array() && !j.is_object(); }

void emit(const json& j, std::string& out, int indent, int level) {
  const bool pretty = indent >= 0;
  auto newline = [&](int lvl) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case json::value_t::number_float: out += format_double(j.get<double>()); return;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && is_primitive(e);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && pretty ? ", " : ",";
        if (!flat) newline(level + 1);
        emit(e, out, indent, level + 1);
        first = false;
      }
      if (!flat) newline(level);
      out += ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        newline(level + 1);
        out += json(it.key()).dump();
        out += pretty ? ": " : ":";
        emit(it.value(), out, indent, level + 1);
        first = false;
      }
      newline(level);
      out += '}';
      return;
    }
    default: out += j.dump(); return;
  }
}

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<DiagramPoint> rows_of(const Diagram& diagram, bool grid) { return grid ? diagram.grid() : diagram.points; }

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  emit(j, out, indent, 0);
  return out;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_error("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"d", m.rows()}, {"rows", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("rows")) parse_error("matrix needs \"d\" and \"rows\"");
  if (!j["d"].is_number_integer() || j["d"].get<long>() < 1) parse_error("\"d\" must be a positive integer");
  const auto d = j["d"].get<std::size_t>();
  const auto& rows = j["rows"];
  if (!rows.is_array() || rows.size() != d) parse_error("\"rows\" must hold d rows");
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!rows[i].is_array() || rows[i].size() != d) parse_error("every row must hold d entries");
    for (std::size_t k = 0; k < d; ++k) m(i, k) = complex_from_json(rows[i][k]);
  }
  return m;
}

json state_to_json(const StateVector& psi) {
  json amps = json::array();
  for (const auto& z : psi.amps()) amps.push_back(complex_to_json(z));
  return {{"d", psi.dim()}, {"amps", std::move(amps)}};
}

StateVector state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("amps")) parse_error("state needs \"d\" and \"amps\"");
  if (!j["d"].is_number_integer() || j["d"].get<long>() < 1) parse_error("\"d\" must be a positive integer");
  const auto d = j["d"].get<std::size_t>();
  const auto& amps = j["amps"];
  if (!amps.is_array() || amps.size() != d) parse_error("\"amps\" must hold d entries");
  std::vector<Complex> v;
  for (const auto& a : amps) v.push_back(complex_from_json(a));
  return StateVector(std::move(v));
}

void save_matrix(const TransitionMatrix& u, const std::string& path) {
  write_text_file(path, dump_json(matrix_to_json(u.matrix())) + "\n");
}

void save_state(const StateVector& psi, const std::string& path) {
  write_text_file(path, dump_json(state_to_json(psi)) + "\n");
}

StateVector load_state(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    parse_error(path + ": " + e.what());
  }
  return state_from_json(j);
}

json meta_to_json(const ArtifactMeta& meta) {
  return {{"tool", kToolName},
          {"version", kVersion},
          {"basis", meta.basis},
          {"tolerances",
           {{"eta", meta.tol.eta},
            {"tau", meta.tol.tau},
            {"tau_class", meta.tol.tau_class},
            {"minor_tol", meta.tol.minor_tol},
            {"null_tol", meta.tol.null_tol}}},
          {"search",
           {{"seed", meta.search.seed},
            {"restarts", meta.search.restarts},
            {"max_iter", meta.search.max_iter},
            {"conv_tol", meta.search.conv_tol},
            {"support_margin", meta.search.support_margin}}}};
}

json report_to_json(const IncompatReport& r, const ArtifactMeta& meta) {
  json witness = nullptr;
  if (r.coinc_witness) witness = {{"S", r.coinc_witness->s}, {"T", r.coinc_witness->t}};
  return {{"meta", meta_to_json(meta)},
          {"d", r.d},
          {"m_ab", r.extrema.m_ab},
          {"M_ab", r.extrema.M_ab},
          {"stroinc", r.stroinc},
          {"coinc", r.coinc},
          {"coinc_witness", witness},
          {"n_min", r.n_min ? json(*r.n_min) : json(nullptr)},
          {"n_min_lower_bound", r.n_min_lower_bound},
          {"edge", r.edge},
          {"legacy_bound", r.legacy_bound}};
}

json diagram_to_json(const Diagram& diagram, const ArtifactMeta& meta, bool grid) {
  json points = json::array();
  for (const auto& p : rows_of(diagram, grid)) {
    const bool empty = p.classification == PointClass::Empty;
    points.push_back({{"n_a", p.n_a},
                      {"n_b", p.n_b},
                      {"classification", std::string(to_string(p.classification))},
                      {"min_ncc_found", empty ? json(nullptr) : finite_or_null(p.min_ncc_found)},
                      {"cells", p.cells},
                      {"classical_witness", p.classical_witness ? state_to_json(*p.classical_witness) : json(nullptr)},
                      {"nonclassical_witness",
                       p.nonclassical_witness ? state_to_json(*p.nonclassical_witness) : json(nullptr)}});
  }
  return {{"meta", meta_to_json(meta)},
          {"d", diagram.d},
          {"hyperbola_constant", diagram.hyperbola_constant},
          {"edge", diagram.edge},
          {"n_min", diagram.n_min},
          {"stroinc", diagram.stroinc},
          {"note", "NONCLASSICAL means the configured search found no KD-classical state"},
          {"points", std::move(points)}};
}

std::string diagram_csv(const Diagram& diagram, const ArtifactMeta& meta, bool grid) {
  std::ostringstream os;
  os << "# " << kToolName << " " << kVersion << "\n";
  os << "# basis: " << meta.basis << "\n";
  os << "# tolerances: eta=" << format_double(meta.tol.eta) << " tau=" << format_double(meta.tol.tau)
     << " tau_class=" << format_double(meta.tol.tau_class) << " minor_tol=" << format_double(meta.tol.minor_tol)
     << " null_tol=" << format_double(meta.tol.null_tol) << "\n";
  os << "# search: seed=" << meta.search.seed << " restarts=" << meta.search.restarts
     << " max_iter=" << meta.search.max_iter << " conv_tol=" << format_double(meta.search.conv_tol)
     << " support_margin=" << format_double(meta.search.support_margin) << "\n";
  os << "# hyperbola_constant=" << format_double(diagram.hyperbola_constant) << " edge=" << diagram.edge
     << " n_min=" << diagram.n_min << "\n";
  os << "# NONCLASSICAL means the configured search found no KD-classical state\n";
  os << "n_a,n_b,classification,min_ncc_found,cells\n";
  for (const auto& p : rows_of(diagram, grid)) {
    const bool empty = p.classification == PointClass::Empty || !std::isfinite(p.min_ncc_found);
    os << p.n_a << ',' << p.n_b << ',' << to_string(p.classification) << ','
       << (empty ? std::string() : format_double(p.min_ncc_found)) << ',' << p.cells << '\n';
  }
  return os.str();
}

std::string diagram_svg(const Diagram& diagram, const ArtifactMeta& meta) {
  constexpr double size = 600.0, margin = 70.0, span = size - 2.0 * margin;
  const int d = std::max(diagram.d, 1);
  const double lo = 0.5, hi = d + 0.5;
  auto px = [&](double n) { return margin + (n - lo) / (hi - lo) * span; };
  auto py = [&](double n) { return size - margin - (n - lo) / (hi - lo) * span; };
  auto f2 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  os << "<desc>" << xml_escape(dump_json(meta_to_json(meta), -1)) << "</desc>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" style=\"fill:#ffffff\"/>\n";
  os << "<rect x=\"" << f2(margin) << "\" y=\"" << f2(margin) << "\" width=\"" << f2(span) << "\" height=\""
     << f2(span) << "\" style=\"fill:none;stroke:#000000;stroke-width:1\"/>\n";
  for (int n = 1; n <= d; ++n) {
    os << "<text x=\"" << f2(px(n)) << "\" y=\"" << f2(size - margin + 20) << "\" style=\"font:12px sans-serif;text-anchor:middle\">"
       << n << "</text>\n";
    os << "<text x=\"" << f2(margin - 12) << "\" y=\"" << f2(py(n) + 4) << "\" style=\"font:12px sans-serif;text-anchor:end\">"
       << n << "</text>\n";
  }
  os << "<text x=\"" << f2(size / 2) << "\" y=\"" << f2(size - 20) << "\" style=\"font:14px sans-serif;text-anchor:middle\">n_A</text>\n";
  os << "<text x=\"20\" y=\"" << f2(size / 2) << "\" style=\"font:14px sans-serif;text-anchor:middle\" transform=\"rotate(-90 20 "
     << f2(size / 2) << ")\">n_B</text>\n";

  // Dashed hyperbola n_A n_B = 1/M^2, clipped to the plot box.
  const double c = diagram.hyperbola_constant;
  if (c > 0.0) {
    const double x0 = std::max(lo, c / hi), x1 = std::min(hi, c / lo);
    if (x0 < x1) {
      os << "<polyline class=\"hyperbola\" style=\"fill:none;stroke:#555555;stroke-width:1.5;stroke-dasharray:6,4\" points=\"";
      constexpr int steps = 120;
      for (int k = 0; k <= steps; ++k) {
        const double x = x0 + (x1 - x0) * k / steps;
        os << (k ? " " : "") << f2(px(x)) << "," << f2(py(c / x));
      }
      os << "\"/>\n";
    }
  }
  // Dot-dashed edge n_A + n_B = d + 1.
  const double e = d + 1.0;
  os << "<line class=\"edge\" x1=\"" << f2(px(e - hi)) << "\" y1=\"" << f2(py(hi)) << "\" x2=\"" << f2(px(hi))
     << "\" y2=\"" << f2(py(e - hi)) << "\" style=\"stroke:#555555;stroke-width:1.5;stroke-dasharray:8,3,2,3\"/>\n";

  const double r = 0.28 * span / (hi - lo) / 2.0 + 4.0;
  for (const auto& p : diagram.points) {
    const double cx = px(p.n_a), cy = py(p.n_b);
    switch (p.classification) {
      case PointClass::Classical:
        os << "<rect class=\"marker\" x=\"" << f2(cx - r) << "\" y=\"" << f2(cy - r) << "\" width=\"" << f2(2 * r)
           << "\" height=\"" << f2(2 * r) << "\" style=\"fill:#d62728;stroke:#000000\"/>\n";
        break;
      case PointClass::Nonclassical:
        os << "<polygon class=\"marker\" points=\"" << f2(cx) << "," << f2(cy - 1.3 * r) << " " << f2(cx + 1.3 * r)
           << "," << f2(cy) << " " << f2(cx) << "," << f2(cy + 1.3 * r) << " " << f2(cx - 1.3 * r) << "," << f2(cy)
           << "\" style=\"fill:#1f77b4;stroke:#000000\"/>\n";
        break;
      case PointClass::Mixed: {
        os << "<polygon class=\"marker\" points=\"";
        for (int k = 0; k < 6; ++k) {
          const double a = std::numbers::pi / 3.0 * k;
          os << (k ? " " : "") << f2(cx + 1.2 * r * std::cos(a)) << "," << f2(cy + 1.2 * r * std::sin(a));
        }
        os << "\" style=\"fill:#e377c2;stroke:#000000\"/>\n";
        break;
      }
      case PointClass::Empty: break;
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

}  // namespace kdscope
