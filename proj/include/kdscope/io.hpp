#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "kdscope/bases.hpp"
#include "kdscope/config.hpp"
#include "kdscope/diagram.hpp"
#include "kdscope/incompat.hpp"
#include "kdscope/kd.hpp"

namespace kdscope {

using json = nlohmann::json;

/// Provenance embedded in every emitted artifact.
struct ArtifactMeta {
  std::string basis;
  Tolerances tol;
  SearchConfig search;
};

/// Serializes with every floating-point number written as %.16e (17
/// significant digits) so values survive a text round trip bit for bit.
std::string dump_json(const json& j, int indent = 2);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json matrix_to_json(const ComplexMatrix& m);        // {"d": N, "rows": [[[re, im], ...], ...]}
ComplexMatrix matrix_from_json(const json& j);     // ParseError on malformed input
json state_to_json(const StateVector& psi);         // {"d": N, "amps": [[re, im], ...]}
StateVector state_from_json(const json& j);

void save_matrix(const TransitionMatrix& u, const std::string& path);
void save_state(const StateVector& psi, const std::string& path);
StateVector load_state(const std::string& path);

json meta_to_json(const ArtifactMeta& meta);
json report_to_json(const IncompatReport& report, const ArtifactMeta& meta);
json diagram_to_json(const Diagram& diagram, const ArtifactMeta& meta, bool grid = false);

/// Comma separated, header n_a,n_b,classification,min_ncc_found,cells, LF
/// endings, rows sorted by (n_a, n_b). Metadata leads as '#' comment lines.
std::string diagram_csv(const Diagram& diagram, const ArtifactMeta& meta, bool grid = false);

/// Self-contained 600x600 scatter plot of the diagram.
std::string diagram_svg(const Diagram& diagram, const ArtifactMeta& meta);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace kdscope
