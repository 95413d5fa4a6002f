#include "cuntz/perm.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace cuntz {

namespace {

void require_same_level(const Perm& p, const Perm& q, const char* op) {
  if (p.n() != q.n())
    throw std::invalid_argument(std::string(op) + ": alphabet mismatch");
  if (p.k() != q.k())
    throw std::invalid_argument(std::string(op) + ": level mismatch");
}

void require_same_alphabet(const Perm& p, const Perm& q, const char* op) {
  if (p.n() != q.n())
    throw std::invalid_argument(std::string(op) + ": alphabet mismatch");
}

}  // namespace

Perm::Perm(int n, int k, std::vector<std::uint32_t> table)
    : n_(n), k_(k), table_(std::move(table)) {}

Perm Perm::identity(int n, int k) {
  const auto size = pow_nk(n, k);
  std::vector<std::uint32_t> t(size);
  std::iota(t.begin(), t.end(), 0u);
  return Perm(n, k, std::move(t));
}

Perm Perm::from_table(int n, int k, std::vector<std::uint32_t> table) {
  const auto size = pow_nk(n, k);
  if (table.size() != size)
    throw std::invalid_argument("table size does not equal n^k");
  std::vector<char> seen(size, 0);
  for (auto x : table) {
    if (x >= size) throw std::invalid_argument("table entry out of range");
    if (seen[x]) throw std::invalid_argument("table is not a bijection");
    seen[x] = 1;
  }
  return Perm(n, k, std::move(table));
}

bool Perm::is_identity() const {
  for (std::uint32_t i = 0; i < table_.size(); ++i)
    if (table_[i] != i) return false;
  return true;
}

Perm compose(const Perm& p, const Perm& q) {
  require_same_level(p, q, "compose");
  std::vector<std::uint32_t> t(p.size());
  const auto& pt = p.table();
  const auto& qt = q.table();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = pt[qt[i]];
  return Perm::from_table(p.n(), p.k(), std::move(t));
}

Perm invert_perm(const Perm& p) {
  std::vector<std::uint32_t> t(p.size());
  const auto& pt = p.table();
  for (std::uint32_t i = 0; i < pt.size(); ++i) t[pt[i]] = i;
  return Perm::from_table(p.n(), p.k(), std::move(t));
}

Perm tensor(const Perm& p, const Perm& q) {
  require_same_alphabet(p, q, "tensor");
  const std::uint64_t np = p.size(), nq = q.size();
  std::vector<std::uint32_t> t(np * nq);
  const auto& pt = p.table();
  const auto& qt = q.table();
  for (std::uint64_t b = 0; b < nq; ++b) {
    const std::uint64_t off_in = np * b;
    const std::uint64_t off_out = np * qt[b];
    for (std::uint64_t a = 0; a < np; ++a)
      t[off_in + a] = static_cast<std::uint32_t>(off_out + pt[a]);
  }
  return Perm::from_table(p.n(), p.k() + q.k(), std::move(t));
}

Perm mid_tensor(int pre, const Perm& p, int post) {
  if (pre < 0 || post < 0) throw std::invalid_argument("mid_tensor: negative padding");
  return tensor(tensor(Perm::identity(p.n(), pre), p), Perm::identity(p.n(), post));
}

Perm embed(const Perm& p, int m) { return tensor(p, Perm::identity(p.n(), m)); }

Perm shift(const Perm& p, int m) { return tensor(Perm::identity(p.n(), m), p); }

Perm phi_r(const Perm& p, int r) {
  if (r < 1) throw std::invalid_argument("phi_r: r must be >= 1");
  // rightmost factor p x id_{r-1} is applied first
  Perm acc = embed(p, r - 1);
  for (int j = r - 2; j >= 0; --j) acc = compose(mid_tensor(r - 1 - j, p, j), acc);
  return acc;
}

Perm convolve(const Perm& p, const Perm& q) {
  require_same_alphabet(p, q, "convolve");
  const int k = p.k(), r = q.k();
  const Perm ph = phi_r(p, r);
  return compose(embed(p, r - 1),
                 compose(invert_perm(ph), compose(embed(q, k - 1), ph)));
}

Perm inner_image(const Perm& p) {
  return compose(shift(p, 1), embed(invert_perm(p), 1));
}

Perm relabel(const Perm& p, const Perm& phi) {
  if (p.n() != phi.n()) throw std::invalid_argument("relabel: alphabet mismatch");
  if (phi.k() != p.k() - 1)
    throw std::invalid_argument("relabel: conjugator must live one level down");
  return compose(shift(phi, 1), compose(p, embed(invert_perm(phi), 1)));
}

bool endo_equal(const Perm& p, const Perm& q) {
  require_same_alphabet(p, q, "endo_equal");
  if (p.k() == q.k()) return p == q;
  if (p.k() < q.k()) return embed(p, q.k() - p.k()) == q;
  return p == embed(q, p.k() - q.k());
}

Perm strip_trailing_id(const Perm& p) {
  Perm cur = p;
  while (cur.k() > 0) {
    const std::uint64_t np = cur.size() / static_cast<std::uint64_t>(cur.n());
    const auto& t = cur.table();
    bool factors = true;
    for (std::uint64_t a = 0; a < np && factors; ++a) factors = t[a] < np;
    for (int c = 1; c < cur.n() && factors; ++c)
      for (std::uint64_t a = 0; a < np && factors; ++a)
        factors = t[a + np * c] == t[a] + np * c;
    if (!factors) break;
    std::vector<std::uint32_t> lower(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(np));
    cur = Perm::from_table(cur.n(), cur.k() - 1, std::move(lower));
  }
  return cur;
}

Perm parse_cycles(int n, int k, std::string_view text) {
  const auto size = pow_nk(n, k);
  std::vector<std::uint32_t> t(size);
  std::iota(t.begin(), t.end(), 0u);
  std::vector<char> used(size, 0);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<std::uint64_t> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!cyc.empty()) {
        if (text[i] != ',') throw ParseError("expected ',' or ')'", i);
        ++i;
        skip_ws();
      }
      const std::size_t start = i;
      std::uint64_t v = 0;
      bool any = false;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > size) throw ParseError("element exceeds n^k = " + std::to_string(size), start);
        ++i;
        any = true;
      }
      if (!any) throw ParseError("expected an integer", i);
      if (v < 1) throw ParseError("elements are 1-based", start);
      if (used[v - 1]) throw ParseError("element " + std::to_string(v) + " repeated", start);
      used[v - 1] = 1;
      cyc.push_back(v - 1);
      skip_ws();
    }
    if (i >= text.size()) throw ParseError("unterminated cycle", text.size());
    ++i;  // ')'
    for (std::size_t j = 0; j < cyc.size(); ++j)
      t[cyc[j]] = static_cast<std::uint32_t>(cyc[(j + 1) % cyc.size()]);
    skip_ws();
  }
  return Perm::from_table(n, k, std::move(t));
}

std::string format_cycles(const Perm& p) {
  const auto& t = p.table();
  std::vector<char> seen(t.size(), 0);
  std::string out;
  for (std::uint32_t s = 0; s < t.size(); ++s) {
    if (seen[s] || t[s] == s) continue;
    out.push_back('(');
    std::uint32_t x = s;
    bool first = true;
    do {
      if (!first) out.push_back(',');
      out += std::to_string(x + 1);
      seen[x] = 1;
      x = t[x];
      first = false;
    } while (x != s);
    out.push_back(')');
  }
  if (out.empty()) out = "()";
  return out;
}

std::uint64_t encode_compact(const Perm& p) {
  const std::uint64_t size = p.size();
  if (size == 0) return 0;
  int bits = 1;
  while ((1ull << bits) < size) ++bits;
  if (static_cast<std::uint64_t>(bits) * size > 64)
    throw std::invalid_argument("encode_compact: table does not fit in 64 bits");
  std::uint64_t code = 0;
  const auto& t = p.table();
  for (std::uint64_t i = 0; i < size; ++i)
    code |= static_cast<std::uint64_t>(t[i]) << (bits * i);
  return code;
}

}  // namespace cuntz
