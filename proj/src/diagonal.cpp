#include "cuntz/diagonal.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cuntz/invert.hpp"

namespace cuntz {

namespace {

std::string key_of(const Word& w) {
  std::string s;
  s.reserve(w.letters.size());
  for (auto c : w.letters) s.push_back(static_cast<char>('0' + c));
  return s;
}

}  // namespace

ProjectionSum canonicalize(int n, std::vector<Word> words) {
  // antichain check: in plain string order a violated prefix pair has an
  // adjacent witness
  {
    std::vector<std::string> keys;
    keys.reserve(words.size());
    for (const auto& w : words) keys.push_back(key_of(w));
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
      throw std::invalid_argument("canonicalize: duplicate projection");
    for (std::size_t i = 0; i + 1 < keys.size(); ++i)
      if (keys[i + 1].compare(0, keys[i].size(), keys[i]) == 0)
        throw std::invalid_argument("canonicalize: word set is not an antichain");
  }

  // merge full sibling families, longest words first
  std::map<int, std::vector<Word>, std::greater<>> by_len;
  for (auto& w : words) by_len[w.length()].push_back(std::move(w));
  std::vector<Word> done;
  while (!by_len.empty()) {
    auto it = by_len.begin();
    const int len = it->first;
    std::vector<Word> bucket = std::move(it->second);
    by_len.erase(it);
    if (len == 0) {
      done.insert(done.end(), bucket.begin(), bucket.end());
      continue;
    }
    std::map<std::string, std::vector<Word>> families;
    for (auto& w : bucket) {
      Word parent{w.n, {w.letters.begin(), w.letters.end() - 1}};
      families[key_of(parent)].push_back(std::move(w));
    }
    for (auto& [pk, kids] : families) {
      if (static_cast<int>(kids.size()) == n) {
        Word parent{kids[0].n, {kids[0].letters.begin(), kids[0].letters.end() - 1}};
        by_len[len - 1].push_back(std::move(parent));  // may cascade upward
      } else {
        for (auto& w : kids) done.push_back(std::move(w));
      }
    }
  }

  std::sort(done.begin(), done.end(), [](const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return word_index(a) < word_index(b);
  });
  ProjectionSum out;
  out.n = n;
  out.words = std::move(done);
  return out;
}

ProjectionSum act_on_projection(const Perm& p, const Word& alpha) {
  if (alpha.n != p.n()) throw std::invalid_argument("act_on_projection: alphabet mismatch");
  validate_word(alpha);
  const int l = alpha.length();
  if (l < 1) throw std::invalid_argument("act_on_projection: word must be nonempty");
  const int n = p.n();
  const int level = p.k() + l - 1;
  const Perm w = u_product(p, l);  // lambda_p(P_alpha) = w P_alpha w^*
  const std::uint64_t d = pow_nk(n, p.k() - 1);
  const std::uint64_t stride = pow_nk(n, l);
  const std::uint64_t base = word_index(alpha);
  std::vector<Word> images;
  images.reserve(d);
  for (std::uint64_t g = 0; g < d; ++g)
    images.push_back(word_from_index(n, level, w(static_cast<std::uint32_t>(base + stride * g))));
  return canonicalize(n, std::move(images));
}

ProjectionSum act_on_sum(const Perm& p, const ProjectionSum& s) {
  std::vector<Word> all;
  for (const auto& w : s.words) {
    auto part = act_on_projection(p, w);
    all.insert(all.end(), part.words.begin(), part.words.end());
  }
  return canonicalize(s.n, std::move(all));
}

std::string to_string(const ProjectionSum& s) {
  if (s.words.empty()) return "0";
  std::vector<std::string> keys;
  keys.reserve(s.words.size());
  for (const auto& w : s.words) keys.push_back(key_of(w));
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) out.push_back('+');
    out.push_back('P');
    out += keys[i];
  }
  return out;
}

DiagTable diag_table(const Perm& p, int maxlen) {
  if (maxlen < 1) throw std::invalid_argument("diag_table: maxlen must be >= 1");
  DiagTable t;
  t.n = p.n();
  t.k = p.k();
  t.maxlen = maxlen;
  for (int l = 1; l <= maxlen; ++l) {
    // rows in plain lexicographic word order, as published
    std::vector<Word> ws;
    for (std::uint64_t i = 0; i < pow_nk(p.n(), l); ++i)
      ws.push_back(word_from_index(p.n(), l, i));
    std::sort(ws.begin(), ws.end(),
              [](const Word& a, const Word& b) { return a.letters < b.letters; });
    for (const auto& w : ws) t.rows.emplace_back(w, act_on_projection(p, w));
  }
  return t;
}

std::string to_text(const DiagTable& t) {
  std::string out;
  for (const auto& [alpha, sum] : t.rows) {
    out += "P";
    out += key_of(alpha);
    out += " -> ";
    out += to_string(sum);
    out += "\n";
  }
  return out;
}

bool is_partition_of_unity(int n, const std::vector<ProjectionSum>& parts) {
  std::vector<Word> all;
  for (const auto& s : parts) all.insert(all.end(), s.words.begin(), s.words.end());
  std::vector<std::string> keys;
  keys.reserve(all.size());
  int maxlen = 0;
  for (const auto& w : all) {
    keys.push_back(key_of(w));
    maxlen = std::max(maxlen, w.length());
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) return false;
  for (std::size_t i = 0; i + 1 < keys.size(); ++i)
    if (keys[i + 1].compare(0, keys[i].size(), keys[i]) == 0) return false;
  std::uint64_t total = 0;
  const std::uint64_t unit = pow_nk(n, maxlen);
  for (const auto& w : all) total += unit / pow_nk(n, w.length());
  return total == unit;
}

bool lap_property_check(const Perm& p, int depth) {
  if (p.n() != 2) throw std::invalid_argument("lap_property_check: defined over n = 2");
  const auto suffix_rows = [&](const Word& mu, std::uint8_t c3) {
    Word w = mu;
    w.letters.push_back(2);
    w.letters.push_back(1);
    w.letters.push_back(c3);
    return act_on_projection(p, w);
  };
  std::vector<Word> mus{Word{2, {}}};
  for (int l = 1; l <= depth; ++l)
    for (std::uint64_t i = 0; i < pow_nk(2, l); ++i) mus.push_back(word_from_index(2, l, i));

  for (const auto& mu : mus) {
    const auto r1 = suffix_rows(mu, 1);  // mu 211
    const auto r2 = suffix_rows(mu, 2);  // mu 212
    if (r1.words.size() != 2 || r2.words.size() != 2) return false;
    const int want = mu.length() + 4;
    auto ends_with = [](const Word& w, std::initializer_list<int> suf) {
      if (w.letters.size() < suf.size()) return false;
      auto it = w.letters.end() - static_cast<std::ptrdiff_t>(suf.size());
      for (int c : suf) {
        if (*it != c) return false;
        ++it;
      }
      return true;
    };
    for (const auto& w : {r1.words[0], r1.words[1], r2.words[0], r2.words[1]})
      if (w.length() != want) return false;
    // classify the terms by suffix; each row has one of each kind
    auto pick = [&](const ProjectionSum& s, std::initializer_list<int> suf) -> const Word* {
      const Word* hit = nullptr;
      for (const auto& w : s.words)
        if (ends_with(w, suf)) {
          if (hit) return nullptr;
          hit = &w;
        }
      return hit;
    };
    const Word* a211 = pick(r1, {2, 1, 1});
    const Word* a222 = pick(r1, {2, 2, 2});
    const Word* b212 = pick(r2, {2, 1, 2});
    const Word* b221 = pick(r2, {2, 2, 1});
    if (!a211 || !a222 || !b212 || !b221) return false;
    // the nu prefixes agree between the two rows
    auto prefix = [](const Word& w) {
      return std::vector<std::uint8_t>(w.letters.begin(), w.letters.end() - 3);
    };
    if (prefix(*a211) != prefix(*b212) || prefix(*a222) != prefix(*b221)) return false;
  }

  // words not ending in 211 or 212 map to single same-length projections
  for (int l = 1; l <= depth + 3; ++l)
    for (std::uint64_t i = 0; i < pow_nk(2, l); ++i) {
      const Word w = word_from_index(2, l, i);
      const auto& ls = w.letters;
      if (ls.size() >= 3 && ls[ls.size() - 3] == 2 && ls[ls.size() - 2] == 1) continue;
      const auto img = act_on_projection(p, w);
      if (img.words.size() != 1 || img.words[0].length() != l) return false;
    }
  return true;
}

}  // namespace cuntz
