#include "forge/io.hpp"

#include <fstream>

#include "forge/linalg.hpp"

namespace forge {

using nlohmann::ordered_json;

namespace {

std::string scal(const Cyc& c, unsigned order) {
  return c.embedded(order).to_string();
}

ordered_json vec_to_json(const Vec& v, unsigned order) {
  ordered_json a = ordered_json::array();
  for (const Cyc& c : v) a.push_back(scal(c, order));
  return a;
}

Vec vec_from_json(const ordered_json& a, unsigned order) {
  Vec v;
  v.reserve(a.size());
  for (const auto& s : a)
    v.push_back(Cyc::from_string(s.get<std::string>()).embedded(order));
  return v;
}

ordered_json mat_to_json(const Mat& m, unsigned order) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(scal(m.at(i, j), order));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const ordered_json& rows, unsigned order) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m.at(i, j) =
          Cyc::from_string(rows[i][j].get<std::string>()).embedded(order);
  return m;
}

ordered_json rank_to_json(const TensorRank& t, unsigned order) {
  ordered_json a = ordered_json::array();
  for (const auto& [x, y] : t)
    a.push_back(
        ordered_json::array({vec_to_json(x, order), vec_to_json(y, order)}));
  return a;
}

TensorRank rank_from_json(const ordered_json& a, unsigned order) {
  TensorRank t;
  for (const auto& p : a)
    t.push_back({vec_from_json(p[0], order), vec_from_json(p[1], order)});
  return t;
}

}  // namespace

ordered_json hopf_to_json(const HopfAlgebra& H) {
  ordered_json j;
  j["schema"] = "hopf-v1";
  j["name"] = H.name;
  j["dim"] = H.dim;
  j["scalar_order"] = H.scalar_order;
  ordered_json labels = ordered_json::array();
  for (const auto& s : H.basis_labels) labels.push_back(s);
  j["basis_labels"] = std::move(labels);
  {
    ordered_json mult = ordered_json::array();
    for (int i = 0; i < H.dim; ++i) {
      ordered_json row = ordered_json::array();
      for (int k = 0; k < H.dim; ++k) {
        ordered_json cell = ordered_json::array();
        for (const auto& [o, c] : H.mult_table[i][k].terms)
          cell.push_back(ordered_json::array({o, scal(c, H.scalar_order)}));
        row.push_back(std::move(cell));
      }
      mult.push_back(std::move(row));
    }
    j["mult"] = std::move(mult);
  }
  j["unit"] = vec_to_json(H.unit, H.scalar_order);
  {
    ordered_json com = ordered_json::array();
    for (int i = 0; i < H.dim; ++i) {
      ordered_json cell = ordered_json::array();
      for (const CoTerm& t : H.comult_table[i])
        cell.push_back(ordered_json::array({t.j, t.k, scal(t.c, H.scalar_order)}));
      com.push_back(std::move(cell));
    }
    j["comult"] = std::move(com);
  }
  j["counit"] = vec_to_json(H.counit, H.scalar_order);
  j["antipode"] = mat_to_json(H.antipode_mat, H.scalar_order);
  if (H.ribbon) {
    j["R"] = rank_to_json(H.ribbon->R, H.scalar_order);
    j["v"] = vec_to_json(H.ribbon->v, H.scalar_order);
    j["lambda"] = vec_to_json(H.ribbon->integral_lambda, H.scalar_order);
  }
  if (!H.known_grouplikes.empty()) {
    ordered_json g = ordered_json::array();
    for (const Vec& v : H.known_grouplikes)
      g.push_back(vec_to_json(v, H.scalar_order));
    j["known_grouplikes"] = std::move(g);
  }
  if (!H.designated_generators.empty()) {
    ordered_json g = ordered_json::array();
    for (const Vec& v : H.designated_generators)
      g.push_back(vec_to_json(v, H.scalar_order));
    j["designated_generators"] = std::move(g);
  }
  if (!H.metadata.empty()) {
    ordered_json m;
    for (const auto& [k, v] : H.metadata) m[k] = v;
    j["metadata"] = std::move(m);
  }
  return j;
}

HopfAlgebra hopf_from_json(const ordered_json& j) {
  if (!j.contains("schema") || j["schema"].get<std::string>() != "hopf-v1")
    throw Error("hopf_from_json: missing or unknown schema");
  HopfAlgebra H;
  H.dim = j["dim"].get<int>();
  H.scalar_order = j["scalar_order"].get<unsigned>();
  H.name = j.value("name", std::string());
  for (const auto& s : j["basis_labels"])
    H.basis_labels.push_back(s.get<std::string>());
  const unsigned N = H.scalar_order;
  H.mult_table.assign(H.dim, std::vector<SparseVec>(H.dim));
  for (int i = 0; i < H.dim; ++i)
    for (int k = 0; k < H.dim; ++k)
      for (const auto& term : j["mult"][i][k])
        H.mult_table[i][k].terms.push_back(
            {term[0].get<int>(),
             Cyc::from_string(term[1].get<std::string>()).embedded(N)});
  H.unit = vec_from_json(j["unit"], N);
  H.comult_table.assign(H.dim, {});
  for (int i = 0; i < H.dim; ++i)
    for (const auto& term : j["comult"][i])
      H.comult_table[i].push_back(
          {term[0].get<int>(), term[1].get<int>(),
           Cyc::from_string(term[2].get<std::string>()).embedded(N)});
  H.counit = vec_from_json(j["counit"], N);
  H.antipode_mat = mat_from_json(j["antipode"], N);
  auto inv = inverse(H.antipode_mat);
  if (!inv) throw Error("hopf_from_json: antipode not invertible");
  H.antipode_inv_mat = std::move(*inv);
  if (j.contains("known_grouplikes"))
    for (const auto& a : j["known_grouplikes"])
      H.known_grouplikes.push_back(vec_from_json(a, N));
  if (j.contains("designated_generators"))
    for (const auto& a : j["designated_generators"])
      H.designated_generators.push_back(vec_from_json(a, N));
  if (j.contains("metadata"))
    for (const auto& [k, v] : j["metadata"].items())
      H.metadata[k] = v.get<std::string>();
  if (j.contains("R")) {
    RibbonData Q;
    Q.R = rank_from_json(j["R"], N);
    if (j.contains("v")) Q.v = vec_from_json(j["v"], N);
    H.ribbon = std::move(Q);
    complete_ribbon_data(H);
    if (j.contains("lambda"))
      H.ribbon->integral_lambda = vec_from_json(j["lambda"], N);
  }
  return H;
}

void save_hopf(const HopfAlgebra& H, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_hopf: cannot open " + path);
  out << hopf_to_json(H).dump(1) << "\n";
}

HopfAlgebra load_hopf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_hopf: cannot open " + path);
  ordered_json j = ordered_json::parse(in);
  return hopf_from_json(j);
}

ordered_json lgn_to_json(const LgnElement& x) {
  ordered_json j;
  j["format"] = "lgn-v1";
  j["g"] = x.g;
  j["n"] = x.n;
  ordered_json terms = ordered_json::array();
  for (const auto& [idx, c] : x.terms)
    terms.push_back(ordered_json::array({idx, c.to_string()}));
  j["terms"] = std::move(terms);
  return j;
}

LgnElement lgn_from_json(const ordered_json& j) {
  if (j.value("format", "") != "lgn-v1")
    throw Error("lgn_from_json: unknown format");
  LgnElement x;
  x.g = j.at("g").get<int>();
  x.n = j.at("n").get<int>();
  for (const auto& t : j.at("terms")) {
    std::vector<int> idx = t.at(0).get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != x.slots())
      throw Error("lgn_from_json: index arity mismatch");
    x.add(idx, Cyc::from_string(t.at(1).get<std::string>()));
  }
  return x;
}

}  // namespace forge
