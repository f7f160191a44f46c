#include "qserre/oracle.hpp"

#include <algorithm>
#include <random>

namespace qserre {

namespace {

bool is_zero(const QRat& c) { return c.is_zero(); }
bool is_zero(const Rational& c) { return c == 0; }
QRat inverse(const QRat& c) { return c.inverse(); }
Rational inverse(const Rational& c) { return Rational(1) / c; }

// Row echelon form over a field, pivots at the deg-lex largest word of each
// row. Pivot rows are monic; they are not back-substituted.
template <class C>
class SparseEchelon {
 public:
  using Row = std::map<Word, C, DegLexLess>;

  /// Reduces r against the pivots; true iff r becomes zero.
  bool reduce(Row& r) const {
    while (!r.empty()) {
      auto lead = std::prev(r.end());
      auto pivot = pivots_.find(lead->first);
      if (pivot == pivots_.end()) return false;
      const C factor = lead->second;
      for (const auto& [w, c] : pivot->second) {
        auto [it, inserted] = r.try_emplace(w);
        it->second -= factor * c;
        if (is_zero(it->second)) r.erase(it);
      }
    }
    return true;
  }

  void insert(Row r) {
    if (reduce(r)) return;
    const C inv = inverse(std::prev(r.end())->second);
    for (auto& [w, c] : r) c *= inv;
    Word lead = std::prev(r.end())->first;
    pivots_.emplace(std::move(lead), std::move(r));
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<Word, Row, DegLexLess> pivots_;
};

// Words of given length with a fixed letter multiset, in lexicographic order.
std::vector<Word> words_with_content(const std::vector<int>& content) {
  std::string letters;
  for (std::size_t l = 0; l < content.size(); ++l) letters.append(static_cast<std::size_t>(content[l]), static_cast<char>(l));
  std::vector<Word> out;
  do {
    out.emplace_back(letters);
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

std::vector<Word> all_words(int alphabet_size, int length) {
  std::vector<Word> out{Word{}};
  for (int i = 0; i < length; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * static_cast<std::size_t>(alphabet_size));
    for (const auto& w : out)
      for (int l = 0; l < alphabet_size; ++l) {
        Word x = w;
        x.push_back(static_cast<Letter>(l));
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

std::uint64_t multinomial(const std::vector<int>& content) {
  std::uint64_t r = 1;
  int n = 0;
  for (int k : content)
    for (int i = 1; i <= k; ++i) {
      ++n;
      r = r * static_cast<std::uint64_t>(n) / static_cast<std::uint64_t>(i);
    }
  return r;
}

void compositions(int total, std::size_t parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<HomogeneousSlice> split_homogeneous(const NcPoly& p) {
  std::vector<HomogeneousSlice> out;
  for (const auto& [w, c] : p.terms()) {
    const int d = static_cast<int>(w.size());
    if (out.empty() || out.back().degree != d) out.push_back({d, NcPoly(p.alphabet())});
    out.back().part.add_term(w, c);
  }
  return out;
}

struct IdealOracle::Block {
  std::uint64_t columns = 0;
  SparseEchelon<QRat> echelon;
};

IdealOracle::IdealOracle(AlphabetPtr alphabet, std::vector<NcPoly> relations, int degree_cap)
    : alphabet_(std::move(alphabet)), relations_(std::move(relations)), cap_(degree_cap), multigraded_(true) {
  for (const auto& r : relations_) {
    if (!(*r.alphabet() == *alphabet_)) throw AlphabetError("relation over a different alphabet");
    if (!r.is_homogeneous()) throw std::invalid_argument("oracle needs homogeneous relations");
    const auto first = r.terms().begin()->first.content(alphabet_->size());
    for (const auto& [w, c] : r.terms())
      if (w.content(alphabet_->size()) != first) multigraded_ = false;
  }
}

IdealOracle::~IdealOracle() = default;

IdealOracle::BlockKey IdealOracle::key_of(const Word& w) const {
  return multigraded_ ? w.content(alphabet_->size()) : BlockKey{};
}

void IdealOracle::check_cap(int degree) const {
  if (degree > cap_)
    throw OracleCapError("slice of degree " + std::to_string(degree) + " exceeds the oracle cap " +
                         std::to_string(cap_) + "; use the rewriting path or raise --oracle-cap");
}

namespace {

// Spanning rows u*rel*v of one block, as lists of (word, coefficient).
template <class F>
void for_each_generator(const AlphabetPtr& alphabet, const std::vector<NcPoly>& relations, bool multigraded,
                        int degree, const std::vector<int>& key, F&& emit) {
  const int n = alphabet->size();
  for (const auto& rel : relations) {
    const int pad = degree - rel.degree();
    if (pad < 0) continue;
    std::vector<Word> paddings;
    if (multigraded) {
      auto content = key;
      const auto rel_content = rel.terms().begin()->first.content(n);
      bool fits = true;
      for (int l = 0; l < n; ++l) {
        content[l] -= rel_content[l];
        if (content[l] < 0) fits = false;
      }
      if (!fits) continue;
      paddings = words_with_content(content);
    } else {
      paddings = all_words(n, pad);
    }
    for (const auto& t : paddings)
      for (int split = 0; split <= pad; ++split) emit(rel, t.sub(0, split), t.sub(split));
  }
}

}  // namespace

const IdealOracle::Block& IdealOracle::block(int degree, const BlockKey& key) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = blocks_.find({degree, key}); it != blocks_.end()) return *it->second;
  }
  auto b = std::make_shared<Block>();
  if (multigraded_) {
    b->columns = multinomial(key);
  } else {
    b->columns = 1;
    for (int i = 0; i < degree; ++i) b->columns *= static_cast<std::uint64_t>(alphabet_->size());
  }
  std::vector<SparseEchelon<QRat>::Row> rows;
  for_each_generator(alphabet_, relations_, multigraded_, degree, key,
                     [&](const NcPoly& rel, const Word& u, const Word& v) {
                       SparseEchelon<QRat>::Row row;
                       for (const auto& [w, c] : rel.terms()) row.emplace(u * w * v, c);
                       rows.push_back(std::move(row));
                     });
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return DegLexLess{}(std::prev(a.end())->first, std::prev(b.end())->first);
  });
  for (auto& r : rows) b->echelon.insert(std::move(r));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = blocks_.emplace(std::make_pair(degree, key), std::move(b));
  return *it->second;
}

std::vector<std::vector<int>> IdealOracle::keys_of_degree(int degree) const {
  if (!multigraded_) return {BlockKey{}};
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(degree, static_cast<std::size_t>(alphabet_->size()), cur, out);
  return out;
}

std::vector<bool> IdealOracle::member_slices(const NcPoly& p) const {
  if (!(*p.alphabet() == *alphabet_)) throw AlphabetError("polynomial over a different alphabet");
  std::vector<bool> verdicts;
  for (const auto& slice : split_homogeneous(p)) {
    check_cap(slice.degree);
    std::map<BlockKey, SparseEchelon<QRat>::Row> groups;
    for (const auto& [w, c] : slice.part.terms()) groups[key_of(w)].emplace(w, c);
    bool member = true;
    for (auto& [key, row] : groups) {
      if (!block(slice.degree, key).echelon.reduce(row)) {
        member = false;
        break;
      }
    }
    verdicts.push_back(member);
  }
  return verdicts;
}

bool IdealOracle::member(const NcPoly& p) const {
  const auto v = member_slices(p);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

std::uint64_t IdealOracle::quotient_dimension(int degree) const {
  check_cap(degree);
  std::uint64_t dim = 0;
  for (const auto& key : keys_of_degree(degree)) {
    const Block& b = block(degree, key);
    dim += b.columns - b.echelon.rank();
  }
  return dim;
}

bool IdealOracle::randomized_precheck(const NcPoly& p, int points, std::uint64_t seed) const {
  if (p.is_zero()) return true;
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(std::size(kPrimes)) - 1);
  const auto slices = split_homogeneous(p);
  for (const auto& s : slices) check_cap(s.degree);

  int done = 0;
  for (int attempt = 0; done < points && attempt < 64 * std::max(points, 1); ++attempt) {
    const int a = kPrimes[pick(rng)];
    int b = kPrimes[pick(rng)];
    if (a == b) continue;
    const Rational point = Rational(rng() & 1u ? -a : a) / b;
    try {
      auto eval_row = [&](const NcPoly& src, const Word& u, const Word& v) {
        SparseEchelon<Rational>::Row row;
        for (const auto& [w, c] : src.terms()) {
          Rational x = c.eval(point);
          if (x != 0) row.emplace(u * w * v, std::move(x));
        }
        return row;
      };
      for (const auto& slice : slices) {
        std::map<BlockKey, NcPoly> groups;
        for (const auto& [w, c] : slice.part.terms()) {
          auto [it, ins] = groups.try_emplace(key_of(w), alphabet_);
          it->second.add_term(w, c);
        }
        for (const auto& [key, part] : groups) {
          SparseEchelon<Rational> ech;
          for_each_generator(alphabet_, relations_, multigraded_, slice.degree, key,
                             [&](const NcPoly& rel, const Word& u, const Word& v) { ech.insert(eval_row(rel, u, v)); });
          auto target = eval_row(part, {}, {});
          if (!ech.reduce(target)) return false;
        }
      }
      ++done;
    } catch (const ArithmeticError&) {
      continue;  // a denominator vanished at this point; draw another
    }
  }
  return true;
}

}  // namespace qserre
