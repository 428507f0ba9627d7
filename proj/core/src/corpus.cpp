#include "fincat/corpus.hpp"

#include <numeric>

#include "fincat/error.hpp"

namespace fincat {

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = {
      {"qo/com-pos", "qo", "operad", "one commutative operation per positive arity", true, {0, 1, 1, 1}},
      {"qo/ass", "qo", "operad", "words under splicing: the regular action in every positive arity", true,
       {0, 1, 2, 6}},
      {"qo/unit", "qo", "operad", "the composition unit alone", true, {0, 1, 0, 0}},
      {"qc/identity", "qc", "monad", "identity functor with trivial substitution", true, {0, 1, 2, 3}},
      {"qc/pointed", "qc", "monad", "carrier plus an absorbing basepoint", true, {1, 2, 3, 4}},
      {"qc/powerset", "qc", "monad", "subsets with union substitution", true, {1, 2, 4, 8}},
      {"qc/h2", "qc", "functor", "maps out of a two element set", true, {0, 1, 4, 9}},
      {"qa/terminal", "qa", "algebrad", "a single point in every arity", true, {1, 1, 1, 1}},
      {"qa/monoid-functions", "qa", "algebrad", "tuples over the two element and-monoid", true, {1, 2, 4, 8}},
      {"qa/unit", "qa", "presheaf", "the tensor unit: one point in arity 0", true, {1, 0, 0, 0}},
  };
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& id) {
  for (const CorpusEntry& e : corpus_entries())
    if (e.id == id) return e;
  throw UnknownIdError("unknown corpus id: " + id);
}

std::vector<std::string> corpus_ids() {
  std::vector<std::string> ids;
  for (const CorpusEntry& e : corpus_entries()) ids.push_back(e.id);
  return ids;
}

Operad corpus_com_pos(int max_arity) {
  SymSeq seq = empty_seq(max_arity);
  for (int n = 1; n <= max_arity; ++n) seq.at[n] = trivial_gset(n, 1);
  return make_operad(std::move(seq), 0, [](const std::vector<int>&, int, const std::vector<int>&) { return 0; });
}

Operad corpus_ass(int max_arity) {
  SymSeq seq = empty_seq(max_arity);
  for (int n = 1; n <= max_arity; ++n) seq.at[n] = regular_gset(n);
  auto rule = [](const std::vector<int>& parts, int x, const std::vector<int>& ms) {
    // elements are words: the permutation lists which input sits at each
    // position; substitution splices the inner words in the outer order
    int s = static_cast<int>(parts.size());
    int n = std::accumulate(parts.begin(), parts.end(), 0);
    auto starts = block_starts(parts);
    const Perm& xw = symmetric_group(s).perm(x);
    std::vector<int> out;
    out.reserve(n);
    for (int k = 1; k <= s; ++k) {
      int i = xw(k);
      const Perm& yi = symmetric_group(parts[i - 1]).perm(ms[i - 1]);
      for (int r = 1; r <= parts[i - 1]; ++r) out.push_back(starts[i - 1] + yi(r));
    }
    return symmetric_group(n).index_of(Perm{out});
  };
  return make_operad(std::move(seq), 0, rule);
}

Operad corpus_unit_operad(int max_arity) {
  return make_operad(comp_unit_seq(max_arity), 0,
                     [](const std::vector<int>&, int, const std::vector<int>&) { return 0; });
}

GSet random_gset(std::mt19937_64& rng, int arity, int max_size) {
  const auto& sg = symmetric_group(arity);
  GSet out = empty_gset(arity);
  int budget = static_cast<int>(rng() % (max_size + 1));
  for (int attempt = 0; attempt < 8 && out.size < budget; ++attempt) {
    int gen_count = static_cast<int>(rng() % 3);
    std::vector<int> gens;
    for (int i = 0; i < gen_count; ++i) gens.push_back(static_cast<int>(rng() % sg.order()));
    GSet orbit = coset_gset(arity, subgroup_closure(arity, gens));
    if (out.size + orbit.size <= budget) out = disjoint_union(out, orbit);
  }
  return out;
}

SymSeq random_seq(std::mt19937_64& rng, int max_arity, int max_carrier, bool empty_nullary) {
  SymSeq a = empty_seq(max_arity);
  for (int n = empty_nullary ? 1 : 0; n <= max_arity; ++n) a.at[n] = random_gset(rng, n, max_carrier);
  return a;
}

} // namespace fincat
