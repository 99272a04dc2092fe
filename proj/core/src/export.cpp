#include "limitnerve/export.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace limitnerve {

using nlohmann::json;

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string vertex_name(const CellComplex& c, std::size_t v) {
  return v < c.vertex_labels.size() ? c.vertex_labels[v] : std::to_string(v);
}

json complex_object(const CellComplex& c) {
  struct Entry {
    std::vector<CellId> sorted;
    std::size_t dim;
    CellId id;
  };
  std::vector<Entry> entries;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(std::max(c.dimension(), 0)) && c.dimension() >= 0; ++k)
    for (CellId i = 0; i < c.cell_count(k); ++i) {
      std::vector<CellId> v = k == 0 ? std::vector<CellId>{i} : c.cell(k, i).vertices;
      std::sort(v.begin(), v.end());
      entries.push_back({std::move(v), k, i});
    }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.sorted < b.sorted; });
  std::vector<std::vector<std::size_t>> rank(static_cast<std::size_t>(std::max(c.dimension() + 1, 0)));
  for (std::size_t k = 0; k < rank.size(); ++k) rank[k].resize(c.cell_count(k));
  for (std::size_t r = 0; r < entries.size(); ++r) rank[entries[r].dim][entries[r].id] = r;

  json vertices = json::array();
  for (std::size_t v = 0; v < c.vertex_count(); ++v) vertices.push_back(vertex_name(c, v));
  json simplices = json::array();
  json faces = json::array();
  for (const auto& e : entries) {
    simplices.push_back(e.sorted);
    json f = json::array();
    if (e.dim > 0)
      for (const auto& ref : c.cell(e.dim, e.id).faces) f.push_back(rank[e.dim - 1][ref.cell]);
    faces.push_back(std::move(f));
  }
  return {{"vertices", std::move(vertices)},
          {"simplices", std::move(simplices)},
          {"faces", std::move(faces)},
          {"f_vector", c.f_vector()},
          {"euler", c.euler()}};
}

}  // namespace

std::string complex_json(const CellComplex& complex) { return complex_object(complex).dump(2) + "\n"; }

std::string model_json(const LeveledModel& model) {
  json j = complex_object(model.complex);
  j["level"] = model.level;
  j["vertex_words"] = model.vertex_words;
  j["p_map"] = model.p;
  j["iota_map"] = model.iota;
  j["iota_conflicts"] = model.iota_conflicts;
  return j.dump(2) + "\n";
}

std::string complex_dot(const CellComplex& complex, std::string_view name) {
  std::ostringstream out;
  out << "graph " << quoted(std::string(name)) << " {\n";
  for (std::size_t v = 0; v < complex.vertex_count(); ++v) out << "  " << quoted(vertex_name(complex, v)) << ";\n";
  for (auto [a, b] : edge_multiset(complex))
    out << "  " << quoted(vertex_name(complex, a)) << " -- " << quoted(vertex_name(complex, b)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string nucleus_json(const Nucleus& nucleus, const std::vector<std::string>& names) {
  json elements = json::array();
  for (std::size_t i = 0; i < nucleus.size(); ++i) {
    json sections = json::array();
    json action = json::array();
    for (std::size_t x = 0; x < nucleus.degree(); ++x) {
      sections.push_back(nucleus.section(i, static_cast<Letter>(x)));
      action.push_back(nucleus.act(i, static_cast<Letter>(x)));
    }
    elements.push_back({{"index", i},
                        {"word", names[i]},
                        {"inverse", nucleus.inverse(i)},
                        {"action", std::move(action)},
                        {"sections", std::move(sections)}});
  }
  json j = {{"size", nucleus.size()},
            {"rounds", nucleus.rounds},
            {"pair_depth", nucleus.pair_depth},
            {"minimality_certified", nucleus.minimality_certified},
            {"elements", std::move(elements)}};
  return j.dump(2) + "\n";
}

std::string moore_dot(const WreathRecursion& rec, const MooreDiagram& diagram, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "digraph moore {\n";
  for (std::size_t x = 0; x < diagram.letters; ++x)
    out << "  " << quoted(rec.alphabet().name(static_cast<Letter>(x))) << ";\n";
  for (const auto& a : diagram.arrows)
    out << "  " << quoted(rec.alphabet().name(a.from)) << " -> " << quoted(rec.alphabet().name(a.to))
        << " [label=" << quoted(names[a.element] + " | " + names[a.section]) << "];\n";
  out << "}\n";
  return out.str();
}

std::string schreier_dot(const WreathRecursion& rec, const SchreierGraph& graph,
                         const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "digraph schreier {\n";
  auto name = [&](std::size_t v) { return quoted(rec.format(graph.word(v))); };
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) out << "  " << name(v) << ";\n";
  for (const auto& e : graph.edges)
    out << "  " << name(e.from) << " -> " << name(e.to) << " [label=" << quoted(labels[e.label]) << "];\n";
  out << "}\n";
  return out.str();
}

std::string certificate_json(GroupEngine& engine, const Nerve& nerve, const ContractionCertificate& cert) {
  const auto& rec = engine.recursion();
  auto members = [&](const std::vector<Element>& set) {
    json words = json::array();
    json ids = json::array();
    for (const Element e : set) {
      words.push_back(engine.to_string(e));
      ids.push_back(e.id());
    }
    return std::make_pair(words, ids);
  };
  json rows = json::array();
  for (const auto& r : cert.rows) {
    json a = json::array();
    for (auto g : nerve.family.sets[r.set]) a.push_back(nerve.table.name(g));
    auto [image, image_ids] = members(r.image);
    auto [simplex, simplex_ids] = members(r.simplex);
    rows.push_back({{"A", std::move(a)},
                    {"g", nerve.table.name(r.element)},
                    {"v", rec.format(index_word(r.word, rec.degree(), cert.depth))},
                    {"image", std::move(image)},
                    {"image_ids", std::move(image_ids)},
                    {"image_set", nerve.table.format(nerve.family.sets[r.image_set])},
                    {"simplex", std::move(simplex)},
                    {"simplex_ids", std::move(simplex_ids)},
                    {"simplex_set", nerve.table.format(nerve.family.sets[r.simplex_set])}});
  }
  json j = {{"depth", cert.depth}, {"monotone", cert.monotone}, {"rows", std::move(rows)}};
  return j.dump(2) + "\n";
}

}  // namespace limitnerve
