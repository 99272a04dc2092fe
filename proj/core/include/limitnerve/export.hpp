#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "limitnerve/complex.hpp"
#include "limitnerve/contraction.hpp"
#include "limitnerve/model.hpp"
#include "limitnerve/nucleus.hpp"

namespace limitnerve {

/// {"vertices", "simplices", "faces", "f_vector", "euler"}. Every cell is
/// listed in "simplices" with its vertex indices sorted ascending, all cells
/// sorted lexicographically; faces[i] lists the simplices bounding simplex i.
std::string complex_json(const CellComplex& complex);

/// The complex schema plus "level", "vertex_words", "p_map" and "iota_map".
std::string model_json(const LeveledModel& model);

/// Undirected 1-skeleton with vertices named by their labels.
std::string complex_dot(const CellComplex& complex, std::string_view name);

/// Element names, inverses, root actions and sections of a nucleus.
std::string nucleus_json(const Nucleus& nucleus, const std::vector<std::string>& names);

/// Letters as vertices, arrows labelled "g | g|_x".
std::string moore_dot(const WreathRecursion& rec, const MooreDiagram& diagram, const std::vector<std::string>& names);

/// Vertices are words, edges v -> g(v) labelled with `labels[generator]`.
std::string schreier_dot(const WreathRecursion& rec, const SchreierGraph& graph,
                         const std::vector<std::string>& labels);

/// Rows keyed by (A, g, v) with member lists as words and registry ids.
std::string certificate_json(GroupEngine& engine, const Nerve& nerve, const ContractionCertificate& cert);

}  // namespace limitnerve
