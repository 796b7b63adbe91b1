#include "decmon/automaton.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

namespace decmon {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Top: return "top";
    case Verdict::Bottom: return "bottom";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Negation normal form over {True, False, Prop, NegProp, And, Or, Next,
// Until, Release}. Release is needed to push negations through Until.
// ---------------------------------------------------------------------------

enum class NnfOp { True, False, Prop, NegProp, And, Or, Next, Until, Release };

struct NnfNode;
using Nnf = std::shared_ptr<const NnfNode>;

struct NnfNode {
  NnfOp op;
  int ap = -1;
  Nnf lhs, rhs;
};

Nnf nnf_node(NnfOp op, Nnf a = nullptr, Nnf b = nullptr, int ap = -1) {
  auto p = std::make_shared<NnfNode>();
  p->op = op;
  p->ap = ap;
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}

Nnf to_nnf(const Formula& f, bool negated) {
  switch (f->op) {
    case FormulaOp::True:
      return nnf_node(negated ? NnfOp::False : NnfOp::True);
    case FormulaOp::Prop:
      return nnf_node(negated ? NnfOp::NegProp : NnfOp::Prop, nullptr, nullptr, f->ap);
    case FormulaOp::Not:
      return to_nnf(f->lhs, !negated);
    case FormulaOp::Or:
      return nnf_node(negated ? NnfOp::And : NnfOp::Or, to_nnf(f->lhs, negated),
                      to_nnf(f->rhs, negated));
    case FormulaOp::Next:
      return nnf_node(NnfOp::Next, to_nnf(f->lhs, negated));
    case FormulaOp::Until:
      return nnf_node(negated ? NnfOp::Release : NnfOp::Until, to_nnf(f->lhs, negated),
                      to_nnf(f->rhs, negated));
    default:
      throw std::logic_error("to_nnf: formula not in core form");
  }
}

// Structural ordering so NNF subformulas can key sets/maps.
int nnf_cmp(const Nnf& a, const Nnf& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (a->ap != b->ap) return a->ap < b->ap ? -1 : 1;
  if (!!a->lhs != !!b->lhs) return a->lhs ? 1 : -1;
  if (a->lhs) {
    if (int c = nnf_cmp(a->lhs, b->lhs)) return c;
  }
  if (!!a->rhs != !!b->rhs) return a->rhs ? 1 : -1;
  if (a->rhs) return nnf_cmp(a->rhs, b->rhs);
  return 0;
}

struct NnfLess {
  bool operator()(const Nnf& a, const Nnf& b) const { return nnf_cmp(a, b) < 0; }
};

using NnfSet = std::set<Nnf, NnfLess>;

// Structural equality; std::set::operator== would compare shared_ptrs.
bool nnfset_eq(const NnfSet& a, const NnfSet& b) {
  if (a.size() != b.size()) return false;
  auto it = b.begin();
  for (const auto& x : a)
    if (nnf_cmp(x, *it++) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Tableau construction (Gerth-Peled-Vardi-Wolper) for an NNF formula:
// produces a generalized Buchi automaton whose states carry literal guards.
// ---------------------------------------------------------------------------

struct TabNode {
  std::set<int> incoming;  // -1 denotes the virtual initial node
  NnfSet new_set, old_set, next_set;
};

struct Nba {
  // Node 0.. with guard literal masks; subset transitions go source->target
  // when the letter satisfies the *target's* literals.
  std::vector<std::uint32_t> pos, neg;          // per node
  std::vector<std::set<int>> incoming;          // per node (-1 = initial)
  std::vector<std::vector<int>> accepting_sets;  // per Until subformula: node ids
};

class TableauBuilder {
 public:
  explicit TableauBuilder(const Nnf& root) {
    collect_untils(root);
    TabNode init;
    init.incoming.insert(-1);
    init.new_set.insert(root);
    expand(std::move(init));
  }

  Nba result() {
    Nba nba;
    int n = static_cast<int>(nodes_.size());
    nba.pos.resize(n, 0);
    nba.neg.resize(n, 0);
    nba.incoming.resize(n);
    for (int i = 0; i < n; ++i) {
      nba.incoming[i] = nodes_[i].incoming;
      for (const auto& g : nodes_[i].old_set) {
        if (g->op == NnfOp::Prop) nba.pos[i] |= 1u << g->ap;
        if (g->op == NnfOp::NegProp) nba.neg[i] |= 1u << g->ap;
      }
    }
    for (const auto& u : untils_) {
      std::vector<int> fset;
      for (int i = 0; i < n; ++i) {
        bool has_u = nodes_[i].old_set.count(u) != 0;
        bool has_rhs = nodes_[i].old_set.count(u->rhs) != 0;
        if (!has_u || has_rhs) fset.push_back(i);
      }
      nba.accepting_sets.push_back(std::move(fset));
    }
    return nba;
  }

 private:
  void collect_untils(const Nnf& f) {
    if (f->op == NnfOp::Until) untils_.insert(f);
    if (f->lhs) collect_untils(f->lhs);
    if (f->rhs) collect_untils(f->rhs);
  }

  void expand(TabNode node) {
    if (node.new_set.empty()) {
      // Merge with an existing node having identical Old and Next.
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nnfset_eq(nodes_[i].old_set, node.old_set) &&
            nnfset_eq(nodes_[i].next_set, node.next_set)) {
          nodes_[i].incoming.insert(node.incoming.begin(), node.incoming.end());
          return;
        }
      }
      int id = static_cast<int>(nodes_.size());
      nodes_.push_back(node);
      TabNode succ;
      succ.incoming.insert(id);
      succ.new_set = node.next_set;
      expand(std::move(succ));
      return;
    }
    Nnf eta = *node.new_set.begin();
    node.new_set.erase(node.new_set.begin());
    switch (eta->op) {
      case NnfOp::False:
        return;  // contradiction: drop the node
      case NnfOp::True:
        node.old_set.insert(eta);
        expand(std::move(node));
        return;
      case NnfOp::Prop:
      case NnfOp::NegProp: {
        // Check consistency with literals already in Old.
        for (const auto& g : node.old_set) {
          if (g->ap == eta->ap && g->op != eta->op &&
              (g->op == NnfOp::Prop || g->op == NnfOp::NegProp))
            return;
        }
        node.old_set.insert(eta);
        expand(std::move(node));
        return;
      }
      case NnfOp::And: {
        if (!node.old_set.count(eta->lhs)) node.new_set.insert(eta->lhs);
        if (!node.old_set.count(eta->rhs)) node.new_set.insert(eta->rhs);
        node.old_set.insert(eta);
        expand(std::move(node));
        return;
      }
      case NnfOp::Next: {
        node.old_set.insert(eta);
        node.next_set.insert(eta->lhs);
        expand(std::move(node));
        return;
      }
      case NnfOp::Or:
      case NnfOp::Until:
      case NnfOp::Release: {
        // Split: eta = new1 \/ (new2 /\ X eta') per the standard expansion.
        NnfSet new1, new2, next1;
        if (eta->op == NnfOp::Or) {
          new1.insert(eta->lhs);
          new2.insert(eta->rhs);
        } else if (eta->op == NnfOp::Until) {
          new1.insert(eta->lhs);
          next1.insert(eta);
          new2.insert(eta->rhs);
        } else {  // Release
          new1.insert(eta->rhs);
          next1.insert(eta);
          new2.insert(eta->lhs);
          new2.insert(eta->rhs);
        }
        TabNode n1 = node;
        for (const auto& g : new1)
          if (!n1.old_set.count(g)) n1.new_set.insert(g);
        n1.next_set.insert(next1.begin(), next1.end());
        n1.old_set.insert(eta);
        TabNode n2 = std::move(node);
        for (const auto& g : new2)
          if (!n2.old_set.count(g)) n2.new_set.insert(g);
        n2.old_set.insert(eta);
        expand(std::move(n1));
        expand(std::move(n2));
        return;
      }
    }
  }

  NnfSet untils_;
  std::vector<TabNode> nodes_;
};

// ---------------------------------------------------------------------------
// Per-state nonemptiness of the generalized Buchi language: a state is live
// iff it can reach a nontrivial SCC that intersects every accepting set.
// ---------------------------------------------------------------------------

std::vector<bool> live_states(const Nba& nba) {
  int n = static_cast<int>(nba.pos.size());
  // Forward adjacency; edge src->dst exists iff the guard of dst is
  // satisfiable (pos and neg masks disjoint, which the tableau guarantees).
  std::vector<std::vector<int>> adj(n);
  for (int dst = 0; dst < n; ++dst)
    for (int src : nba.incoming[dst])
      if (src >= 0) adj[src].push_back(dst);

  std::vector<std::vector<bool>> in_fset(nba.accepting_sets.size(),
                                         std::vector<bool>(n, false));
  for (std::size_t k = 0; k < nba.accepting_sets.size(); ++k)
    for (int q : nba.accepting_sets[k]) in_fset[k][q] = true;

  // Iterative Tarjan SCC.
  std::vector<int> index(n, -1), low(n, 0), scc_id(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, next_scc = 0;
  std::vector<bool> scc_good;  // per SCC: nontrivial and hits every F set

  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      if (fr.child < adj[fr.v].size()) {
        int w = adj[fr.v][fr.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
      } else {
        int v = fr.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> comp;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc_id[w] = next_scc;
            comp.push_back(w);
            if (w == v) break;
          }
          bool nontrivial = comp.size() > 1;
          if (!nontrivial)
            for (int w : adj[comp[0]])
              if (w == comp[0]) nontrivial = true;
          bool good = nontrivial;
          for (std::size_t k = 0; good && k < in_fset.size(); ++k) {
            bool hit = false;
            for (int w : comp) hit = hit || in_fset[k][w];
            good = hit;
          }
          scc_good.push_back(good);
          ++next_scc;
        }
      }
    }
  }

  // Backward closure: live iff in a good SCC or can reach one.
  std::vector<bool> live(n, false);
  for (int v = 0; v < n; ++v) live[v] = scc_good[scc_id[v]];
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (live[v]) continue;
      for (int w : adj[v])
        if (live[w]) {
          live[v] = true;
          changed = true;
          break;
        }
    }
  }
  return live;
}

// ---------------------------------------------------------------------------
// Subset construction of the NFA of live states, as a DFA whose state is the
// subset bitmask (emptiness of the subset is what the labelling needs).
// ---------------------------------------------------------------------------

struct Dfa {
  int initial = 0;
  std::vector<bool> empty_subset;          // per DFA state
  std::vector<std::vector<int>> next;      // [state][letter]
};

Dfa determinize(const Nba& nba, const std::vector<bool>& live, int num_aps) {
  int n = static_cast<int>(nba.pos.size());
  std::uint32_t num_letters = 1u << num_aps;
  // Subsets use slot n for the virtual initial node; the guard of a node is
  // checked on the letter that enters it.
  using Subset = std::vector<bool>;
  std::map<Subset, int> ids;
  std::vector<Subset> subsets;
  auto intern = [&](const Subset& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(subsets.size());
    ids.emplace(s, id);
    subsets.push_back(s);
    return id;
  };

  // The virtual node is live iff some live node can be entered from it.
  bool init_live = false;
  for (int q = 0; q < n; ++q)
    if (live[q] && nba.incoming[q].count(-1)) init_live = true;
  Subset init(n + 1, false);
  init[n] = init_live;

  Dfa dfa;
  dfa.initial = intern(init);
  for (int s = 0; s < static_cast<int>(subsets.size()); ++s) {
    const Subset cur = subsets[s];
    bool any = false;
    for (int q = 0; q <= n; ++q) any = any || cur[q];
    dfa.empty_subset.push_back(!any);
    dfa.next.emplace_back(num_letters, 0);
    for (std::uint32_t letter = 0; letter < num_letters; ++letter) {
      Subset nxt(n + 1, false);
      for (int q = 0; q < n; ++q) {
        if (!live[q]) continue;
        if ((letter & nba.pos[q]) != nba.pos[q]) continue;
        if ((letter & nba.neg[q]) != 0) continue;
        bool reachable = false;
        for (int r : nba.incoming[q]) {
          if (r == -1 ? cur[n] : cur[r]) {
            reachable = true;
            break;
          }
        }
        if (reachable) nxt[q] = true;
      }
      dfa.next[s][letter] = intern(nxt);
    }
  }
  return dfa;
}

// ---------------------------------------------------------------------------
// Product, reachability restriction and Moore minimization.
// ---------------------------------------------------------------------------

MonitorAutomaton minimize(const MonitorAutomaton& m) {
  std::uint32_t num_letters = 1u << m.num_aps;
  std::vector<int> part(m.num_states);
  for (int s = 0; s < m.num_states; ++s) part[s] = static_cast<int>(m.label[s]);
  int num_blocks = -1;
  for (;;) {
    // Refine by (block, successor blocks); refinement never merges blocks,
    // so a stable block count means a stable partition.
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> new_part(m.num_states);
    for (int s = 0; s < m.num_states; ++s) {
      std::vector<int> sig;
      sig.reserve(num_letters + 1);
      sig.push_back(part[s]);
      for (std::uint32_t a = 0; a < num_letters; ++a) sig.push_back(part[m.next[s][a]]);
      auto it = sig_ids.find(sig);
      if (it == sig_ids.end()) it = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size())).first;
      new_part[s] = it->second;
    }
    int nb = static_cast<int>(sig_ids.size());
    part = std::move(new_part);
    if (nb == num_blocks) break;
    num_blocks = nb;
  }
  // Renumber blocks by first occurrence, initial state first.
  std::vector<int> remap(num_blocks, -1);
  MonitorAutomaton out;
  out.num_aps = m.num_aps;
  int next_id = 0;
  std::vector<int> rep;  // representative per new state
  auto assign = [&](int block) {
    if (remap[block] == -1) {
      remap[block] = next_id++;
      rep.push_back(-1);
    }
    return remap[block];
  };
  out.initial = assign(part[m.initial]);
  rep[out.initial] = m.initial;
  for (int s = 0; s < m.num_states; ++s) {
    int id = assign(part[s]);
    if (rep[id] == -1) rep[id] = s;
  }
  out.num_states = next_id;
  out.label.resize(next_id);
  out.next.assign(next_id, std::vector<int>(num_letters));
  for (int id = 0; id < next_id; ++id) {
    int s = rep[id];
    out.label[id] = m.label[s];
    for (std::uint32_t a = 0; a < num_letters; ++a) out.next[id][a] = remap[part[m.next[s][a]]];
  }
  return out;
}

}  // namespace

MonitorAutomaton build_monitor(const Formula& f, int num_aps) {
  if (num_aps > 12) throw std::invalid_argument("build_monitor: more than 12 propositions");
  if (!is_core(f)) throw std::invalid_argument("build_monitor: formula not in core form");
  std::uint32_t num_letters = 1u << num_aps;

  auto make_dfa = [&](const Nnf& nnf) {
    TableauBuilder tb(nnf);
    Nba nba = tb.result();
    return determinize(nba, live_states(nba), num_aps);
  };
  Dfa pos = make_dfa(to_nnf(f, false));
  Dfa neg = make_dfa(to_nnf(f, true));

  // Reachable product with on-the-fly labelling.
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> states;
  auto intern = [&](int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(states.size());
    ids.emplace(key, id);
    states.push_back(key);
    return id;
  };
  MonitorAutomaton m;
  m.num_aps = num_aps;
  m.initial = intern(pos.initial, neg.initial);
  for (int s = 0; s < static_cast<int>(states.size()); ++s) {
    auto [a, b] = states[s];
    Verdict v = Verdict::Unknown;
    if (pos.empty_subset[a]) v = Verdict::Bottom;
    else if (neg.empty_subset[b]) v = Verdict::Top;
    m.label.push_back(v);
    m.next.emplace_back(num_letters);
    for (std::uint32_t letter = 0; letter < num_letters; ++letter) {
      if (v != Verdict::Unknown) {
        m.next[s][letter] = s;  // terminal sink
      } else {
        m.next[s][letter] = intern(pos.next[a][letter], neg.next[b][letter]);
      }
    }
  }
  m.num_states = static_cast<int>(states.size());
  return minimize(m);
}

Monitorability check_monitorable(const MonitorAutomaton& m) {
  // A state is verdict-reaching iff some path from it hits a Top or Bottom
  // state. All states of m are reachable by construction.
  std::vector<bool> good(m.num_states, false);
  for (int s = 0; s < m.num_states; ++s)
    if (m.label[s] != Verdict::Unknown) good[s] = true;
  bool changed = true;
  std::uint32_t num_letters = 1u << m.num_aps;
  while (changed) {
    changed = false;
    for (int s = 0; s < m.num_states; ++s) {
      if (good[s]) continue;
      for (std::uint32_t a = 0; a < num_letters; ++a)
        if (good[m.next[s][a]]) {
          good[s] = true;
          changed = true;
          break;
        }
    }
  }
  Monitorability r;
  for (int s = 0; s < m.num_states; ++s)
    if (!good[s]) r.dead_unknown.push_back(s);
  r.monitorable = r.dead_unknown.empty();
  return r;
}

}  // namespace decmon
