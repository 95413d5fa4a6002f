#include "cuntz/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cuntz {

TreeTuple extract_maps(const Perm& p) {
  if (p.k() < 1) throw std::invalid_argument("extract_maps: level must be >= 1");
  const int n = p.n();
  const std::uint64_t d = p.size() / static_cast<std::uint64_t>(n);  // n^{k-1}
  const Perm pinv = invert_perm(p);
  TreeTuple t;
  t.n = n;
  t.k = p.k();
  t.maps.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    TreeMap& f = t.maps[static_cast<std::size_t>(i)];
    f.n = n;
    f.k = p.k();
    f.table.resize(d);
    for (std::uint64_t a = 0; a < d; ++a)
      f.table[a] = static_cast<std::uint32_t>(pinv(static_cast<std::uint32_t>(i + n * a)) % d);
  }
  return t;
}

bool is_rooted_tree(const TreeMap& f) {
  const std::uint32_t d = f.domain_size();
  std::uint32_t root = d;
  for (std::uint32_t a = 0; a < d; ++a)
    if (f.table[a] == a) {
      if (root != d) return false;  // second fixed point
      root = a;
    }
  if (root == d) return false;
  // every orbit must fall into the root; any other cycle never reaches it
  std::vector<std::uint8_t> state(d, 0);  // 0 unknown, 1 reaches root, 2 on current path
  state[root] = 1;
  std::vector<std::uint32_t> path;
  for (std::uint32_t a = 0; a < d; ++a) {
    if (state[a]) continue;
    path.clear();
    std::uint32_t x = a;
    while (state[x] == 0) {
      state[x] = 2;
      path.push_back(x);
      x = f.table[x];
    }
    if (state[x] == 2) return false;  // closed a cycle off the root
    for (auto v : path) state[v] = 1;
  }
  return true;
}

std::uint32_t tree_root(const TreeMap& f) {
  if (!is_rooted_tree(f)) throw std::domain_error("functional graph is not a rooted tree");
  for (std::uint32_t a = 0; a < f.domain_size(); ++a)
    if (f.table[a] == a) return a;
  throw std::logic_error("unreachable");
}

int height_of(const TreeMap& f) {
  const std::uint32_t root = tree_root(f);
  const std::uint32_t d = f.domain_size();
  std::vector<int> depth(d, -1);
  depth[root] = 0;
  int h = 0;
  std::vector<std::uint32_t> path;
  for (std::uint32_t a = 0; a < d; ++a) {
    if (depth[a] >= 0) continue;
    path.clear();
    std::uint32_t x = a;
    while (depth[x] < 0) {
      path.push_back(x);
      x = f.table[x];
    }
    int base = depth[x];
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth[*it] = ++base;
    h = std::max(h, base);
  }
  return h;
}

namespace {

struct TreeView {
  std::uint32_t root;
  std::vector<std::vector<std::uint32_t>> children;  // diagram children (root loop dropped)
};

TreeView children_of(const TreeMap& f) {
  TreeView v;
  v.root = tree_root(f);
  v.children.resize(f.domain_size());
  for (std::uint32_t a = 0; a < f.domain_size(); ++a)
    if (a != v.root) v.children[f.table[a]].push_back(a);
  return v;
}

struct CanonInfo {
  std::vector<std::string> code;      // per vertex, subtree code
  std::vector<std::uint64_t> aut;     // per vertex, |Aut(subtree)|
  std::vector<std::uint32_t> minword; // per vertex, smallest word in subtree
};

std::uint64_t factorial(std::uint64_t m) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= m; ++i) r *= i;
  return r;
}

// bottom-up over a post-order walk (iterative; chains can be deep)
CanonInfo canonize(const TreeView& tv) {
  const std::size_t d = tv.children.size();
  CanonInfo ci;
  ci.code.resize(d);
  ci.aut.assign(d, 1);
  ci.minword.resize(d);
  std::vector<std::pair<std::uint32_t, bool>> stack{{tv.root, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.push_back({v, true});
      for (auto c : tv.children[v]) stack.push_back({c, false});
      continue;
    }
    std::vector<std::uint32_t> kids = tv.children[v];
    std::sort(kids.begin(), kids.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (ci.code[a] != ci.code[b]) return ci.code[a] < ci.code[b];
      return ci.minword[a] < ci.minword[b];
    });
    std::string code = "(";
    std::uint64_t aut = 1;
    std::uint32_t mw = v;
    std::size_t i = 0;
    while (i < kids.size()) {
      std::size_t j = i;
      while (j < kids.size() && ci.code[kids[j]] == ci.code[kids[i]]) ++j;
      aut *= factorial(j - i);
      for (std::size_t t = i; t < j; ++t) {
        code += ci.code[kids[t]];
        aut *= ci.aut[kids[t]];
        mw = std::min(mw, ci.minword[kids[t]]);
      }
      i = j;
    }
    code += ")";
    ci.code[v] = std::move(code);
    ci.aut[v] = aut;
    ci.minword[v] = mw;
  }
  return ci;
}

// canonical DFS order of vertices (children sorted as in canonize)
std::vector<std::uint32_t> canonical_order(const TreeView& tv, const CanonInfo& ci) {
  std::vector<std::uint32_t> order;
  order.reserve(tv.children.size());
  std::vector<std::uint32_t> stack{tv.root};
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    std::vector<std::uint32_t> kids = tv.children[v];
    std::sort(kids.begin(), kids.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (ci.code[a] != ci.code[b]) return ci.code[a] > ci.code[b];
      return ci.minword[a] > ci.minword[b];
    });
    for (auto c : kids) stack.push_back(c);  // reversed sort -> popped in order
  }
  return order;
}

// parse a parenthesis code into a parent array in canonical DFS order
std::vector<int> parse_code(const std::string& code) {
  std::vector<int> parent;
  std::vector<int> stack;
  for (char c : code) {
    if (c == '(') {
      const int v = static_cast<int>(parent.size());
      parent.push_back(stack.empty() ? -1 : stack.back());
      stack.push_back(v);
    } else {
      stack.pop_back();
    }
  }
  return parent;
}

std::uint64_t aut_from_parent(const std::vector<int>& parent,
                              const std::vector<std::string>& subcode) {
  std::uint64_t aut = 1;
  const int d = static_cast<int>(parent.size());
  for (int v = 0; v < d; ++v) {
    std::vector<std::string> kid_codes;
    for (int c = v + 1; c < d; ++c)
      if (parent[c] == v) kid_codes.push_back(subcode[static_cast<std::size_t>(c)]);
    std::sort(kid_codes.begin(), kid_codes.end());
    std::size_t i = 0;
    while (i < kid_codes.size()) {
      std::size_t j = i;
      while (j < kid_codes.size() && kid_codes[j] == kid_codes[i]) ++j;
      aut *= factorial(j - i);
      i = j;
    }
  }
  return aut;
}

std::vector<std::string> subcodes_from_parent(const std::vector<int>& parent,
                                              const std::string& code) {
  // recompute each vertex's subtree code by scanning the balanced string
  std::vector<std::string> sub(parent.size());
  std::vector<std::size_t> open;
  std::vector<int> vert;
  int v = -1;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i] == '(') {
      ++v;
      open.push_back(i);
      vert.push_back(v);
    } else {
      sub[static_cast<std::size_t>(vert.back())] = code.substr(open.back(), i - open.back() + 1);
      open.pop_back();
      vert.pop_back();
    }
  }
  return sub;
}

TreeShape shape_from_code(const std::string& code) {
  TreeShape s;
  s.code = code;
  s.parent = parse_code(code);
  s.vertices = static_cast<int>(s.parent.size());
  s.aut = aut_from_parent(s.parent, subcodes_from_parent(s.parent, code));
  return s;
}

}  // namespace

TreeShape shape_of(const TreeMap& f) {
  if (!is_rooted_tree(f)) throw std::domain_error("shape_of: not a rooted tree");
  const TreeView tv = children_of(f);
  const CanonInfo ci = canonize(tv);
  return shape_from_code(ci.code[tv.root]);
}

std::uint64_t aut_order(const TreeShape& s) { return s.aut; }

std::uint64_t stabilizer_order(const TreeMap& f) {
  // relabelings commuting with f correspond exactly to automorphisms of the
  // unlabeled tree, so no search is needed
  return shape_of(f).aut;
}

std::vector<std::uint32_t> canonical_labeling(const TreeMap& f) {
  if (!is_rooted_tree(f)) throw std::domain_error("canonical_labeling: not a rooted tree");
  const TreeView tv = children_of(f);
  const CanonInfo ci = canonize(tv);
  return canonical_order(tv, ci);
}

TreeMap instantiate(const TreeShape& s, int n, int k) {
  if (pow_nk(n, k - 1) != static_cast<std::uint64_t>(s.vertices))
    throw std::invalid_argument("instantiate: shape size is not n^{k-1}");
  TreeMap f;
  f.n = n;
  f.k = k;
  f.table.resize(static_cast<std::size_t>(s.vertices));
  for (int v = 0; v < s.vertices; ++v)
    f.table[static_cast<std::size_t>(v)] =
        static_cast<std::uint32_t>(s.parent[static_cast<std::size_t>(v)] < 0
                                       ? v
                                       : s.parent[static_cast<std::size_t>(v)]);
  return f;
}

namespace {

// all rooted trees with v vertices and <= n children everywhere, as codes
const std::vector<std::string>& inner_trees(int v, int n,
                                            std::map<std::pair<int, int>, std::vector<std::string>>& memo);

void multisets_into(int total, int parts, int maxn,
                    std::map<std::pair<int, int>, std::vector<std::string>>& memo,
                    std::vector<std::string>& current, std::vector<std::string>& out) {
  if (parts == 0) {
    if (total == 0) {
      std::vector<std::string> kids = current;
      std::sort(kids.begin(), kids.end());
      std::string code = "(";
      for (auto& c : kids) code += c;
      code += ")";
      out.push_back(std::move(code));
    }
    return;
  }
  for (int first = total - (parts - 1); first >= 1; --first) {
    for (const auto& t : inner_trees(first, maxn, memo)) {
      // avoid duplicate multisets: when the previous chosen subtree has the
      // same size, require non-decreasing code
      if (!current.empty()) {
        const auto& prev = current.back();
        const bool same_size =
            std::count(prev.begin(), prev.end(), '(') == first;
        if (same_size && t < prev) continue;
      }
      current.push_back(t);
      multisets_into(total - first, parts - 1, maxn, memo, current, out);
      current.pop_back();
    }
    // sizes non-increasing: once we drop below the previous size we are fine;
    // duplicates across different size splits cannot occur
  }
}

const std::vector<std::string>& inner_trees(
    int v, int n, std::map<std::pair<int, int>, std::vector<std::string>>& memo) {
  auto key = std::make_pair(v, n);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<std::string> out;
  if (v == 1) {
    out.push_back("()");
  } else {
    std::vector<std::string> current;
    for (int c = 1; c <= std::min(n, v - 1); ++c)
      multisets_into(v - 1, c, n, memo, current, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  auto [pos, inserted] = memo.emplace(key, std::move(out));
  return pos->second;
}

}  // namespace

std::vector<std::string> subtree_codes(const TreeShape& s) {
  return subcodes_from_parent(s.parent, s.code);
}

std::vector<TreeShape> enumerate_shapes(int vertices, int n) {
  if (vertices < 1) throw std::invalid_argument("enumerate_shapes: vertices must be >= 1");
  std::map<std::pair<int, int>, std::vector<std::string>> memo;
  std::vector<std::string> codes;
  if (vertices == 1) {
    codes.push_back("()");
  } else {
    std::vector<std::string> current;
    // root in-degree 1..n-1: its self-loop uses one of the n preimage slots
    for (int c = 1; c <= std::min(n - 1, vertices - 1); ++c)
      multisets_into(vertices - 1, c, n, memo, current, codes);
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  }
  std::vector<TreeShape> shapes;
  shapes.reserve(codes.size());
  for (const auto& c : codes) shapes.push_back(shape_from_code(c));
  return shapes;
}

namespace {

void dot_one(std::string& out, const TreeMap& f, bool labels, int index) {
  const std::uint32_t root = tree_root(f);
  const auto order = canonical_labeling(f);
  std::vector<std::uint32_t> pos(f.domain_size());
  for (std::uint32_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  auto name = [&](std::uint32_t w) {
    std::string s = labels ? to_string(word_from_index(f.n, f.k - 1, w))
                           : "v" + std::to_string(pos[w]);
    if (w == root) s += "*";
    return s;
  };
  out += "  subgraph cluster_f" + std::to_string(index) + " {\n";
  out += "    label=\"f" + std::to_string(index) + "\";\n";
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    const std::uint32_t w = order[i];
    out += "    \"f" + std::to_string(index) + "_" + name(w) + "\";\n";
  }
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    const std::uint32_t w = order[i];
    if (w == root) continue;  // the root loop is left implicit
    out += "    \"f" + std::to_string(index) + "_" + name(w) + "\" -> \"f" +
           std::to_string(index) + "_" + name(f.table[w]) + "\";\n";
  }
  out += "  }\n";
}

}  // namespace

std::string to_dot(const TreeMap& f, bool labels) {
  std::string out = "digraph tree {\n";
  dot_one(out, f, labels, 1);
  out += "}\n";
  return out;
}

std::string to_dot(const TreeTuple& t, bool labels) {
  std::string out = "digraph trees {\n";
  for (std::size_t i = 0; i < t.maps.size(); ++i)
    dot_one(out, t.maps[i], labels, static_cast<int>(i) + 1);
  out += "}\n";
  return out;
}

}  // namespace cuntz
