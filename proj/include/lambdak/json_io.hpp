#pragma once

#include <sstream>
#include <string>

#include "json.hpp"
#include "lambdak/witness.hpp"

namespace lambdak {

using nlohmann::json;

struct ParseError : std::runtime_error {
  ParseError(const std::string& m) : std::runtime_error(m) {}
};

// Matrices: {"rows": n, "cols": m, "entries": [[row-major]]}; entries that
// exceed 64 bits are encoded as decimal strings.
inline json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) {
      const BigInt& v = m(i, j);
      if (v.fits_int64())
        row.push_back(v.small_value());
      else
        row.push_back(v.to_string());
    }
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline IntMatrix matrix_from_json(const json& j) {
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrix: missing rows/cols/entries");
  long r = j["rows"].get<long>(), c = j["cols"].get<long>();
  IntMatrix m(r, c);
  const json& e = j["entries"];
  if ((long)e.size() != r) throw ParseError("matrix: bad row count");
  for (long i = 0; i < r; ++i) {
    if ((long)e[i].size() != c) throw ParseError("matrix: bad column count");
    for (long k = 0; k < c; ++k) {
      const json& x = e[i][k];
      if (x.is_number_integer())
        m(i, k) = BigInt((long long)x.get<long long>());
      else if (x.is_string())
        m(i, k) = BigInt::from_string(x.get<std::string>());
      else
        throw ParseError("matrix: entry must be an integer or decimal string");
    }
  }
  return m;
}

inline std::string cell_key(const MultiIndex& c) {
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s;
}

inline MultiIndex cell_from_key(const std::string& s, int dim) {
  MultiIndex c;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) c.push_back(std::stoi(part));
  if ((int)c.size() != dim) throw ParseError("complex: bad cell index " + s);
  return c;
}

// Complexes: {"dimension": n, "ranks": {cell: rank}, "differentials":
// {"d": {direction: {cell: matrix}}, "d_tilde": {...}}}. Binary complexes
// carry both families, plain ones only "d".
inline json to_json(const BinaryMultiComplex& x, bool binary = true) {
  json ranks = json::object();
  for (auto& [c, r] : x.ranks) ranks[cell_key(c)] = r;
  auto family = [&](int fam) {
    json dirs = json::object();
    for (int k = 0; k < x.dim; ++k) {
      json cells = json::object();
      for (auto& [c, r] : x.ranks) {
        MultiIndex t = c;
        t[k] -= 1;
        if (t[k] < 0 || x.rank(t) == 0) continue;
        cells[cell_key(c)] = to_json(x.d(fam, k, c));
      }
      dirs[std::to_string(k + 1)] = std::move(cells);
    }
    return dirs;
  };
  json out{{"dimension", x.dim}, {"ranks", std::move(ranks)}};
  out["differentials"] = json::object();
  out["differentials"]["d"] = family(0);
  if (binary) out["differentials"]["d_tilde"] = family(1);
  return out;
}

inline json to_json(const MultiComplex& x) {
  BinaryMultiComplex b(x.dim);
  b.ranks = x.ranks;
  b.fam[0] = x.diff;
  b.fam[1] = x.diff;
  return to_json(b, false);
}

inline json to_json(const ChainComplex& c) { return to_json(chain_to_multi(c)); }
inline json to_json(const BinaryComplex& b) {
  return to_json(BinaryMultiComplex::from_binary(b), true);
}

struct ParsedComplex {
  bool binary = false;
  BinaryMultiComplex x;  // for plain complexes both families coincide
};

inline ParsedComplex complex_from_json(const json& j) {
  if (!j.contains("dimension") || !j.contains("ranks"))
    throw ParseError("complex: missing dimension/ranks");
  ParsedComplex out;
  int dim = j["dimension"].get<int>();
  if (dim < 1) throw ParseError("complex: dimension must be >= 1");
  out.x = BinaryMultiComplex(dim);
  for (auto& [key, val] : j["ranks"].items()) {
    long r = val.get<long>();
    MultiIndex c = cell_from_key(key, dim);
    for (int v : c)
      if (v < 0) throw ParseError("complex: negative support at " + key);
    if (r < 0) throw ParseError("complex: negative rank at " + key);
    if (r > 0) out.x.ranks[c] = r;
  }
  if (!j.contains("differentials"))
    throw ParseError("complex: missing differentials");
  const json& d = j["differentials"];
  if (!d.contains("d")) throw ParseError("complex: missing differential family d");
  out.binary = d.contains("d_tilde");
  auto read_family = [&](const json& fj, int fam) {
    for (auto& [dirkey, cells] : fj.items()) {
      int k = std::stoi(dirkey) - 1;
      if (k < 0 || k >= dim) throw ParseError("complex: bad direction " + dirkey);
      for (auto& [ck, mj] : cells.items()) {
        MultiIndex c = cell_from_key(ck, dim);
        IntMatrix m = matrix_from_json(mj);
        MultiIndex t = c;
        t[k] -= 1;
        if (m.rows() != out.x.rank(t) || m.cols() != out.x.rank(c))
          throw ParseError("complex: differential shape mismatch at cell " + ck);
        out.x.set_d(fam, k, c, std::move(m));
      }
    }
  };
  read_family(d["d"], 0);
  if (out.binary)
    read_family(d["d_tilde"], 1);
  else
    out.x.fam[1] = out.x.fam[0];
  return out;
}

// Witness chains. Complexes are stored once under string ids; witnesses and
// the target expression refer to them by id.
inline json to_json(const WitnessChain& chain) {
  std::map<std::string, std::string> key_to_id;
  json classes = json::object();
  auto id_of = [&](const BinaryMultiComplex& x) {
    std::string key = complex_key(x);
    auto it = key_to_id.find(key);
    if (it != key_to_id.end()) return it->second;
    std::string id = "c" + std::to_string(key_to_id.size());
    key_to_id[key] = id;
    classes[id] = to_json(x, true);
    return id;
  };
  json ws = json::array();
  for (const auto& w : chain.witnesses) {
    if (w.kind == RelationWitness::Kind::Ses) {
      json maps_inc = json::object(), maps_prj = json::object();
      for (auto& [c, m] : w.ses.inclusion) maps_inc[cell_key(c)] = to_json(m);
      for (auto& [c, m] : w.ses.projection) maps_prj[cell_key(c)] = to_json(m);
      ws.push_back(json{{"kind", "ses"},
                        {"level", w.ses.total.dim},
                        {"objects",
                         {{"sub", id_of(w.ses.sub)},
                          {"total", id_of(w.ses.total)},
                          {"quotient", id_of(w.ses.quotient)}}},
                        {"maps",
                         {{"inclusion", std::move(maps_inc)},
                          {"projection", std::move(maps_prj)}}}});
    } else {
      ws.push_back(json{{"kind", "diagonal"},
                        {"level", w.diag.complex.dim},
                        {"objects", {{"complex", id_of(w.diag.complex)}}},
                        {"direction", w.diag.direction}});
    }
  }
  json target = json::array();
  for (auto& [key, coeff] : chain.target.terms) {
    auto it = key_to_id.find(key);
    std::string id;
    if (it != key_to_id.end()) {
      id = it->second;
    } else {
      // a target class that never occurs in a witness: impossible for
      // generated chains but kept serializable
      id = "t" + std::to_string(key_to_id.size());
      key_to_id[key] = id;
    }
    target.push_back(json{{"coeff", coeff.to_string()}, {"ref", id}});
  }
  return json{{"classes", std::move(classes)},
              {"target", std::move(target)},
              {"witnesses", std::move(ws)}};
}

inline WitnessChain witness_chain_from_json(const json& j) {
  if (!j.contains("classes") || !j.contains("witnesses") || !j.contains("target"))
    throw ParseError("witness chain: missing classes/target/witnesses");
  std::map<std::string, BinaryMultiComplex> classes;
  for (auto& [id, cj] : j["classes"].items())
    classes[id] = complex_from_json(cj).x;
  auto cls = [&](const json& idj) -> const BinaryMultiComplex& {
    std::string id = idj.get<std::string>();
    auto it = classes.find(id);
    if (it == classes.end()) throw ParseError("witness chain: unknown class " + id);
    return it->second;
  };
  WitnessChain chain;
  for (const json& wj : j["witnesses"]) {
    std::string kind = wj.at("kind").get<std::string>();
    if (kind == "ses") {
      SesWitness w;
      w.sub = cls(wj.at("objects").at("sub"));
      w.total = cls(wj.at("objects").at("total"));
      w.quotient = cls(wj.at("objects").at("quotient"));
      for (auto& [ck, mj] : wj.at("maps").at("inclusion").items())
        w.inclusion[cell_from_key(ck, w.total.dim)] = matrix_from_json(mj);
      for (auto& [ck, mj] : wj.at("maps").at("projection").items())
        w.projection[cell_from_key(ck, w.total.dim)] = matrix_from_json(mj);
      chain.witnesses.push_back(RelationWitness::make_ses(std::move(w)));
    } else if (kind == "diagonal") {
      DiagonalWitness w;
      w.complex = cls(wj.at("objects").at("complex"));
      w.direction = wj.at("direction").get<int>();
      chain.witnesses.push_back(RelationWitness::make_diagonal(std::move(w)));
    } else {
      throw ParseError("witness chain: unknown witness kind " + kind);
    }
  }
  for (const json& tj : j["target"]) {
    std::string id = tj.at("ref").get<std::string>();
    auto it = classes.find(id);
    if (it == classes.end())
      throw ParseError("witness chain: target references unknown class " + id);
    chain.target.add(BigInt::from_string(tj.at("coeff").get<std::string>()),
                     complex_key(it->second));
  }
  return chain;
}

}  // namespace lambdak
