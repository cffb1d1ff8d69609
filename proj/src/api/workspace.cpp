#include "workspace.hpp"

#include <functional>

namespace ain::api {

namespace {

// path-carrying accessors so schema errors name the offending entry
struct Node {
  const json& j;
  std::string path;

  Node at(const std::string& key) const {
    if (!j.is_object() || !j.contains(key)) throw InputError(path + ": missing key '" + key + "'");
    return {j.at(key), path + "/" + key};
  }
  Node at(size_t i) const { return {j.at(i), path + "/" + std::to_string(i)}; }
  bool has(const std::string& key) const { return j.is_object() && j.contains(key); }
  [[noreturn]] void fail(const std::string& what) const { throw InputError(path + ": " + what); }

  long integer() const {
    if (!j.is_number_integer()) fail("expected an integer");
    return j.get<long>();
  }
  std::string str() const {
    if (!j.is_string()) fail("expected a string");
    return j.get<std::string>();
  }
  bool boolean() const {
    if (!j.is_boolean()) fail("expected true or false");
    return j.get<bool>();
  }
  const json& array() const {
    if (!j.is_array()) fail("expected an array");
    return j;
  }
  const json& object() const {
    if (!j.is_object()) fail("expected an object");
    return j;
  }
  long integer_or(const std::string& key, long dflt) const { return has(key) ? at(key).integer() : dflt; }

  Scalar scalar() const {
    try {
      if (j.is_number_integer()) return Scalar(j.get<long>());
      if (j.is_string()) return Scalar::parse(j.get<std::string>());
    } catch (const math_error& e) {
      fail(e.what());
    }
    fail("expected an exact scalar (integer or \"p/q\" string)");
  }
  Vec vec(size_t dim) const {
    array();
    if (j.size() != dim) fail("expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
    Vec v(dim);
    for (size_t i = 0; i < dim; ++i) v[i] = at(i).scalar();
    return v;
  }
};

int object_ref(const AInfCategory& c, const Node& n) {
  if (n.j.is_number_integer()) {
    long i = n.j.get<long>();
    if (i < 0 || i >= static_cast<long>(c.num_objects())) n.fail("object index out of range");
    return static_cast<int>(i);
  }
  long i = c.object_index(n.str());
  if (i < 0) n.fail("unknown object '" + n.str() + "'");
  return static_cast<int>(i);
}

std::vector<int> object_list(const AInfCategory& c, const Node& n) {
  std::vector<int> out;
  for (size_t i = 0; i < n.array().size(); ++i) out.push_back(object_ref(c, n.at(i)));
  return out;
}

std::uint64_t entry_seed(const Node& n, std::uint64_t base, const std::string& id) {
  if (n.has("seed")) return static_cast<std::uint64_t>(n.at("seed").integer());
  // FNV-1a: stable across standard libraries
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : id) h = (h ^ ch) * 1099511628211ull;
  return base ^ h;
}

ComplexEntry parse_complex(const Node& n, const std::string& id, std::uint64_t seed) {
  std::string kind = n.has("kind") ? n.at("kind").str() : "chain";
  if (kind != "chain" && kind != "cochain") n.at("kind").fail("kind must be 'chain' or 'cochain'");
  int step = kind == "chain" ? -1 : 1;
  std::string prefix = id + "_";
  if (n.has("random")) {
    Node r = n.at("random");
    Rng rng(entry_seed(r, seed, id));
    int lo = static_cast<int>(r.integer_or("lo", 0)), hi = static_cast<int>(r.integer_or("hi", 3));
    int maxdim = static_cast<int>(r.integer_or("maxdim", 2));
    if (hi < lo || maxdim < 0) r.fail("empty level range");
    return {step == -1 ? random_chain(rng, lo, hi, maxdim, prefix) : random_cochain(rng, lo, hi, maxdim, prefix), ""};
  }
  std::map<int, size_t> dims;
  Node dn = n.at("dims");
  for (auto& [k, v] : dn.object().items()) {
    Node e{v, dn.path + "/" + k};
    long d = e.integer();
    if (d < 0) e.fail("negative dimension");
    try {
      dims[std::stoi(k)] = static_cast<size_t>(d);
    } catch (const std::exception&) {
      e.fail("level keys must be integers");
    }
  }
  std::map<int, Mat> diffs;
  if (n.has("diffs")) {
    Node df = n.at("diffs");
    for (auto& [k, v] : df.object().items()) {
      Node e{v, df.path + "/" + k};
      int lvl = 0;
      try {
        lvl = std::stoi(k);
      } catch (const std::exception&) {
        e.fail("level keys must be integers");
      }
      size_t rows = dims.count(lvl + step) ? dims[lvl + step] : 0, cols = dims.count(lvl) ? dims[lvl] : 0;
      if (e.array().size() != rows) e.fail("expected " + std::to_string(rows) + " rows");
      Mat m(rows, cols);
      for (size_t r = 0; r < rows; ++r) {
        Vec row = e.at(r).vec(cols);
        for (size_t c = 0; c < cols; ++c) m(r, c) = row[c];
      }
      diffs[lvl] = m;
    }
  }
  try {
    return {ChainComplex::from_levels(step, dims, diffs, prefix), ""};
  } catch (const math_error& e) {
    if (std::string(e.what()) == "d^2 != 0") return {std::nullopt, "d^2 != 0"};
    n.fail(e.what());
  }
}

void parse_ops(AInfCategory& c, const Node& list) {
  for (size_t i = 0; i < list.array().size(); ++i) {
    Node op = list.at(i);
    int n = static_cast<int>(op.at("n").integer());
    if (n < 1 || n > c.arity_cap()) op.at("n").fail("arity outside 1.." + std::to_string(c.arity_cap()));
    std::vector<int> objs = object_list(c, op.at("objects"));
    if (static_cast<int>(objs.size()) != n + 1) op.at("objects").fail("expected n + 1 objects");
    std::vector<int> idx;
    Node in = op.at("inputs");
    if (static_cast<int>(in.array().size()) != n) in.fail("expected n inputs");
    for (int k = 0; k < n; ++k) {
      long b = in.at(k).integer();
      // inputs in tensor order: input k lives in Hom(x_{n-1-k}, x_{n-k})
      size_t dim = c.hom(objs[n - 1 - k], objs[n - k]).dim();
      if (b < 0 || b >= static_cast<long>(dim)) in.at(k).fail("basis index out of range");
      idx.push_back(static_cast<int>(b));
    }
    SparseVec out;
    Node o = op.at("output");
    size_t odim = c.hom(objs.front(), objs.back()).dim();
    for (size_t k = 0; k < o.array().size(); ++k) {
      Node term = o.at(k);
      long r = term.at(0).integer();
      if (r < 0 || r >= static_cast<long>(odim)) term.at(0).fail("basis index out of range");
      out.emplace_back(static_cast<size_t>(r), term.at(1).scalar());
    }
    c.set_op(n, objs, idx, out);
  }
}

CategoryEntry parse_category(const Node& n, const std::string& id, const Workspace& ws) {
  std::string kind = n.at("kind").str();
  CategoryEntry e;
  if (kind == "simplex") {
    long k = n.at("n").integer();
    if (k < 0 || k > 8) n.at("n").fail("simplex dimension must be in 0..8");
    e.cat = std::make_shared<AInfCategory>(standard_simplex_category(static_cast<int>(k),
                                                                     static_cast<int>(n.integer_or("arity_cap", 4))));
    if (!n.has("overrides")) e.simplex_n = static_cast<int>(k);
  } else if (kind == "chain_dg") {
    std::vector<ChainComplex> objs;
    std::vector<std::string> labels;
    Node ol = n.at("objects");
    for (size_t i = 0; i < ol.array().size(); ++i) {
      Node o = ol.at(i);
      std::string cid = o.at("complex").str();
      auto it = ws.complexes.find(cid);
      if (it == ws.complexes.end()) o.at("complex").fail("unknown complex '" + cid + "'");
      if (!it->second.complex) o.at("complex").fail("complex '" + cid + "' is not a complex (" + it->second.error + ")");
      if (it->second.complex->step() != 1) o.at("complex").fail("chain dg-category objects must be cochain complexes");
      objs.push_back(*it->second.complex);
      labels.push_back(o.has("label") ? o.at("label").str() : cid);
    }
    e.dg = make_chain_dg(std::move(objs), std::move(labels));
    e.cat = e.dg->cat;
  } else if (kind == "random_chain_dg") {
    Rng rng(entry_seed(n, ws.seed, id));
    int k = static_cast<int>(n.integer_or("objects", 3));
    if (k < 1 || k > 6) n.fail("objects must be in 1..6");
    int lo = static_cast<int>(n.integer_or("lo", 0)), hi = static_cast<int>(n.integer_or("hi", 2));
    if (hi < lo) n.fail("empty level range");
    e.dg = random_chain_dg(rng, k, lo, hi, static_cast<int>(n.integer_or("maxdim", 2)),
                           n.has("zero") && n.at("zero").boolean());
    e.cat = e.dg->cat;
  } else if (kind == "explicit") {
    std::vector<std::string> labels;
    Node ol = n.at("objects");
    for (size_t i = 0; i < ol.array().size(); ++i) labels.push_back(ol.at(i).str());
    e.cat = std::make_shared<AInfCategory>(labels, static_cast<int>(n.integer_or("arity_cap", 2)));
    if (n.has("homs")) {
      Node hl = n.at("homs");
      for (size_t i = 0; i < hl.array().size(); ++i) {
        Node h = hl.at(i);
        int x = object_ref(*e.cat, h.at("from")), y = object_ref(*e.cat, h.at("to"));
        std::vector<BasisElem> basis;
        Node bl = h.at("basis");
        for (size_t b = 0; b < bl.array().size(); ++b)
          basis.push_back({bl.at(b).at("label").str(), static_cast<int>(bl.at(b).at("degree").integer())});
        try {
          e.cat->set_hom(x, y, GradedSpace(std::move(basis)));
        } catch (const math_error& err) {
          bl.fail(err.what());
        }
      }
    }
    if (n.has("ops")) parse_ops(*e.cat, n.at("ops"));
    if (n.has("units")) {
      Node ul = n.at("units");
      for (auto& [k, v] : ul.object().items()) {
        Node u{v, ul.path + "/" + k};
        int x = object_ref(*e.cat, Node{json(k), u.path});
        e.cat->set_unit(x, u.vec(e.cat->hom(x, x).dim()));
      }
    }
  } else {
    n.at("kind").fail("unknown category kind '" + kind + "'");
  }
  if (n.has("overrides")) parse_ops(*e.cat, n.at("overrides"));
  return e;
}

}  // namespace

CategoryEntry& Workspace::category(const std::string& id) {
  auto it = categories.find(id);
  if (it == categories.end()) throw InputError("unknown category '" + id + "'");
  return it->second;
}

MapCache& Workspace::maps(const std::string& id) {
  CategoryEntry& e = category(id);
  if (!e.maps) e.maps = std::make_shared<MapCache>(e.cat, cap);
  return *e.maps;
}

void apply_field(const std::string& field) {
  if (field == "rational") {
    Scalar::set_prime(0);
    return;
  }
  if (field.rfind("fp:", 0) == 0) {
    unsigned long p = 0;
    try {
      p = std::stoul(field.substr(3));
    } catch (const std::exception&) {
      throw InputError("field: bad modulus in '" + field + "'");
    }
    bool prime = p >= 2;
    for (unsigned long d = 2; prime && d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) throw InputError("field: modulus " + std::to_string(p) + " is not prime");
    Scalar::set_prime(p);
    return;
  }
  throw InputError("field must be 'rational' or 'fp:P', got '" + field + "'");
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.str());
  return a;
}

Workspace load_workspace(const std::string& text, std::optional<std::uint64_t> seed, std::optional<int> cap) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  Node root{doc, ""};
  root.object();
  Workspace ws;
  ws.seed = seed ? *seed : static_cast<std::uint64_t>(root.integer_or("seed", 0));
  ws.cap = cap ? *cap : static_cast<int>(root.integer_or("cap", 4));
  if (ws.cap < 1 || ws.cap > 8) throw InputError("cap must be in 1..8");
  static const std::vector<std::string> known = {"field", "seed", "cap", "complexes", "categories",
                                                 "simplices", "big_simplices", "twisted"};
  for (auto& [k, v] : doc.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw InputError("/" + k + ": unknown section");
  if (root.has("complexes"))
    for (auto& [id, v] : root.at("complexes").object().items())
      ws.complexes[id] = parse_complex(Node{v, "/complexes/" + id}, id, ws.seed);
  if (root.has("categories"))
    for (auto& [id, v] : root.at("categories").object().items())
      ws.categories[id] = parse_category(Node{v, "/categories/" + id}, id, ws);
  if (root.has("simplices"))
    for (auto& [id, v] : root.at("simplices").object().items()) {
      Node n{v, "/simplices/" + id};
      SimplexEntry e;
      e.category = n.at("category").str();
      if (!ws.categories.count(e.category)) n.at("category").fail("unknown category '" + e.category + "'");
      const AInfCategory& c = *ws.categories[e.category].cat;
      e.simplex.objects = object_list(c, n.at("objects"));
      e.simplex.n = static_cast<int>(e.simplex.objects.size()) - 1;
      if (e.simplex.n < 0) n.at("objects").fail("a simplex needs at least one object");
      if (e.simplex.n > ws.cap + 2) n.at("objects").fail("simplex dimension exceeds cap + 2");
      if (n.has("random") && n.at("random").boolean()) {
        Rng rng(entry_seed(n, ws.seed, id));
        try {
          e.simplex = random_simplex(c, e.simplex.objects, rng);
        } catch (const math_error& err) {
          n.fail(err.what());
        }
      } else if (n.has("components")) {
        Node cl = n.at("components");
        for (auto& [key, val] : cl.object().items()) {
          Node cn{val, cl.path + "/" + key};
          std::vector<int> str;
          try {
            size_t pos = 0;
            while (pos <= key.size()) {
              size_t dot = key.find('.', pos);
              str.push_back(std::stoi(key.substr(pos, dot - pos)));
              if (dot == std::string::npos) break;
              pos = dot + 1;
            }
          } catch (const std::exception&) {
            cn.fail("component keys look like \"0.2.3\"");
          }
          for (size_t i = 0; i < str.size(); ++i)
            if (str[i] < 0 || str[i] > e.simplex.n || (i && str[i] <= str[i - 1]) || str.size() < 2)
              cn.fail("not a strictly increasing string in [0, n]");
          int x = e.simplex.objects[str.front()], y = e.simplex.objects[str.back()];
          e.simplex.components[str] = cn.vec(c.hom(x, y).dim());
        }
        // absent strings are zero
        for (auto& s : increasing_strings(e.simplex.n))
          if (!e.simplex.components.count(s))
            e.simplex.components[s] = Vec(c.hom(e.simplex.objects[s.front()], e.simplex.objects[s.back()]).dim());
      }
      ws.simplices[id] = std::move(e);
    }
  if (root.has("big_simplices"))
    for (auto& [id, v] : root.at("big_simplices").object().items()) {
      Node n{v, "/big_simplices/" + id};
      BigEntry e;
      e.category = n.at("category").str();
      if (!ws.categories.count(e.category)) n.at("category").fail("unknown category '" + e.category + "'");
      const AInfCategory& c = *ws.categories[e.category].cat;
      e.simplex.objects = object_list(c, n.at("objects"));
      e.simplex.n = static_cast<int>(e.simplex.objects.size()) - 1;
      if (e.simplex.n < 1) n.at("objects").fail("a big simplex needs at least two objects");
      if (e.simplex.n > ws.cap) n.at("objects").fail("cap exceeded: dimension " + std::to_string(e.simplex.n) +
                                                     " > cap " + std::to_string(ws.cap));
      MapCache& maps = ws.maps(e.category);
      if (n.has("random") && n.at("random").boolean()) {
        Rng rng(entry_seed(n, ws.seed, id));
        e.simplex = random_big_simplex(maps, e.simplex.objects, rng);
      } else {
        Node gl = n.at("g");
        for (auto& [key, val] : gl.object().items()) {
          Node gn{val, gl.path + "/" + key};
          Flag f;
          try {
            f = parse_flag(key);
          } catch (const math_error& err) {
            gn.fail(err.what());
          }
          if (f.empty() || f.front().empty() || f.front().back() > e.simplex.n) gn.fail("flag outside [0, n]");
          int i = f.front().front(), j = f.front().back();
          const MappingSpace& ms = maps.get(e.simplex.objects[i], e.simplex.objects[j]);
          int lvl = static_cast<int>(f.size()) - 1;
          if (lvl >= static_cast<int>(ms.dk.X.dims.size())) gn.fail("cap exceeded");
          e.simplex.g[f] = gn.vec(ms.dk.X.dims[lvl]);
        }
      }
      ws.big_simplices[id] = std::move(e);
    }
  if (root.has("twisted"))
    for (auto& [id, v] : root.at("twisted").object().items()) {
      Node n{v, "/twisted/" + id};
      TwistedEntry e;
      e.category = n.at("category").str();
      if (!ws.categories.count(e.category)) n.at("category").fail("unknown category '" + e.category + "'");
      e.complex.cat = ws.categories[e.category].cat;
      const AInfCategory& c = *e.complex.cat;
      Node cl = n.at("components");
      for (size_t i = 0; i < cl.array().size(); ++i)
        e.complex.comps.push_back({static_cast<int>(cl.at(i).at("pos").integer()), object_ref(c, cl.at(i).at("object"))});
      if (n.has("q")) {
        Node ql = n.at("q");
        for (size_t i = 0; i < ql.array().size(); ++i) {
          Node q = ql.at(i);
          long a = q.at("from").integer(), b = q.at("to").integer();
          long k = static_cast<long>(e.complex.size());
          if (a < 0 || a >= k || b < 0 || b >= k) q.fail("component index out of range");
          e.complex.q[{size_t(a), size_t(b)}] = q.at("value").vec(c.hom(e.complex.obj(a), e.complex.obj(b)).dim());
        }
      }
      ws.twisted[id] = std::move(e);
    }
  if (ws.complexes.empty() && ws.categories.empty() && ws.simplices.empty() && ws.big_simplices.empty() &&
      ws.twisted.empty())
    ws.warnings.push_back("document declares no entities");
  return ws;
}

}  // namespace ain::api
