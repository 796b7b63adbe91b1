#include "decmon/monitor.hpp"

#include <algorithm>
#include <stdexcept>

namespace decmon {

ProcessMonitor::ProcessMonitor(const ProtocolAutomaton* pa, int index,
                               const std::vector<bool>& initial_valuation)
    : pa_(pa), i_(index), q_c_(pa->initial) {
  for (std::size_t ap = 0; ap < pa->aps.size(); ++ap)
    if (pa->aps[ap].owner == i_)
      history_[static_cast<int>(ap)] = {{0, initial_valuation[ap]}};
  reset_step(0, 0, pa->initial);
  // The first step has no StepStart: the statically known initial
  // coordinators take their roles directly.
  for (auto& [tr_id, v] : views_)
    v.is_coordinator = initial_coordinator(pa_->tr(tr_id)) == i_;
  step_start_seen_ = true;
}

bool ProcessMonitor::trc_contains(int tr_id) const {
  return std::binary_search(trc_.begin(), trc_.end(), tr_id);
}

void ProcessMonitor::trc_add(int tr_id) {
  auto it = std::lower_bound(trc_.begin(), trc_.end(), tr_id);
  if (it == trc_.end() || *it != tr_id) trc_.insert(it, tr_id);
}

void ProcessMonitor::reset_step(int step, Time t_llc, int location) {
  step_ = step;
  t_llc_ = t_llc;
  q_c_ = location;
  trc_.clear();
  tr_e_ = -1;
  t_tr_e_ = kTimeInf;
  views_.clear();
  step_start_seen_ = false;
  pending_changed_ = false;
  if (pa_->label[q_c_] != Verdict::Unknown) return;
  for (int tr_id : pa_->outgoing[q_c_]) {
    const ProtocolTransition& tr = pa_->tr(tr_id);
    if (tr.associated.empty()) {
      // Constant-true conjunct: enabled at the step start, checked locally.
      trc_add(tr_id);
      if (t_llc < t_tr_e_ || (t_llc == t_tr_e_ && tr_id < tr_e_)) {
        tr_e_ = tr_id;
        t_tr_e_ = t_llc;
      }
      pending_changed_ = true;
      continue;
    }
    if (!std::binary_search(tr.associated.begin(), tr.associated.end(), i_)) continue;
    TransitionView v;
    v.gpsr = IntervalSet::from(t_llc);
    // A process's knowledge of anyone (itself included) predates the step
    // start until an update actually covers t_llc.
    for (int j : tr.associated) v.t_lu[j] = t_llc - kTick;
    v.scanned_to = t_llc;
    views_.emplace(tr_id, std::move(v));
  }
}

const TransitionView* ProcessMonitor::view(int tr_id) const {
  auto it = views_.find(tr_id);
  return it == views_.end() ? nullptr : &it->second;
}

void ProcessMonitor::subtract_own_falsity(int tr_id, TransitionView& v, Time now) {
  // Remove from gpsr every instant in [scanned_to, now] where one of this
  // process's literals in the conjunct is false. The window is inclusive of
  // `now`: the right-continuous value at `now` is already known.
  Time w_end = now + kTick;
  if (v.scanned_to >= w_end) return;
  for (const Literal& lit : pa_->tr(tr_id).conjunct) {
    auto hist_it = history_.find(lit.ap);
    if (hist_it == history_.end()) continue;  // not our literal
    const auto& hist = hist_it->second;
    // Find the segment containing the window start.
    std::size_t k = std::upper_bound(hist.begin(), hist.end(), std::make_pair(v.scanned_to, true),
                                     [](const auto& a, const auto& b) { return a.first < b.first; }) -
                    hist.begin();
    if (k > 0) --k;
    for (; k < hist.size(); ++k) {
      Time seg_lo = std::max(hist[k].first, v.scanned_to);
      Time seg_hi = k + 1 < hist.size() ? std::min(hist[k + 1].first, w_end) : w_end;
      if (seg_lo >= w_end) break;
      if (seg_lo < seg_hi && hist[k].second != lit.positive) v.gpsr.remove(seg_lo, seg_hi);
    }
  }
  v.scanned_to = w_end;
}

void ProcessMonitor::enter_location(Time now, int target, int tr_id, MonitorOutput& out) {
  Announcement ann;
  ann.step = step_ + 1;
  ann.at = t_tr_e_;
  ann.from = q_c_;
  ann.to = target;
  ann.tr_id = tr_id;
  out.announcements.push_back(ann);

  Time new_t_llc = t_tr_e_;
  int new_step = step_ + 1;
  if (pa_->label[target] != Verdict::Unknown) {
    VerdictBody vb;
    vb.verdict = pa_->label[target];
    vb.at = new_t_llc;
    out.verdict = vb;
    Message m;
    m.step = new_step;
    m.t_llc = new_t_llc;
    m.location = target;
    m.sender = i_;
    m.body = vb;
    for (int p = 0; p < pa_->num_processes; ++p)
      if (p != i_) out.sends.emplace_back(p, m);
    reset_step(new_step, new_t_llc, target);
    halted_ = true;
    return;
  }

  // Notify the initial coordinators of the new location's transitions.
  std::map<int, std::vector<int>> coordinated;  // process -> tr ids
  for (int id : pa_->outgoing[target]) {
    int c = initial_coordinator(pa_->tr(id));
    if (c >= 0) coordinated[c].push_back(id);
  }
  reset_step(new_step, new_t_llc, target);
  step_start_seen_ = true;
  for (auto& [p, trs] : coordinated) {
    if (p == i_) {
      for (int id : trs) views_.at(id).is_coordinator = true;
      continue;
    }
    Message m;
    m.step = new_step;
    m.t_llc = new_t_llc;
    m.location = target;
    m.sender = i_;
    StepStartBody b;
    b.coordinated_trs = trs;
    m.body = std::move(b);
    out.sends.emplace_back(p, m);
  }
  // The new step may already be decidable from local history: re-run at the
  // same instant (finitely many same-instant steps by aperiodicity).
  update(now, out);
}

void ProcessMonitor::update(Time now, MonitorOutput& out) {
  if (halted_ || pa_->label[q_c_] != Verdict::Unknown) return;
  // TrC growth from a just-received Aggregate counts as a change here, so
  // completion and forwarding go through the same path as local detection.
  bool changed = pending_changed_;
  pending_changed_ = false;

  // Pass (a)+(b): refresh own knowledge, then detect enabling times.
  for (auto& [tr_id, v] : views_) {
    subtract_own_falsity(tr_id, v, now);
    v.t_lu[i_] = now;
    if (trc_contains(tr_id)) continue;
    auto m = v.gpsr.min_point();
    if (!m || *m > now) continue;
    bool covered = true;
    for (const auto& [j, lu] : v.t_lu) covered = covered && lu >= *m;
    if (!covered) continue;
    trc_add(tr_id);
    changed = true;
    if (*m < t_tr_e_ || (*m == t_tr_e_ && tr_id < tr_e_)) {
      tr_e_ = tr_id;
      t_tr_e_ = *m;
    }
  }

  // Pass (c): transitions that provably cannot precede Tr_e.
  if (tr_e_ >= 0) {
    for (auto& [tr_id, v] : views_) {
      if (trc_contains(tr_id)) continue;
      // A transition with a lower id would win a tie at t_Tr_e, so it must be
      // excluded through t_Tr_e inclusive; a higher id only before t_Tr_e.
      Time cutoff = tr_id < tr_e_ ? t_tr_e_ + kTick : t_tr_e_;
      bool cannot_precede = v.gpsr.restrict_before(cutoff).is_empty();
      if (!cannot_precede) {
        bool all_known = true;
        for (const auto& [j, lu] : v.t_lu) all_known = all_known && lu >= cutoff;
        cannot_precede = all_known;
      }
      if (cannot_precede) {
        trc_add(tr_id);
        changed = true;
      }
    }
  }

  // Pass (d): delegate coordination where own knowledge cannot decide.
  for (auto& [tr_id, v] : views_) {
    if (trc_contains(tr_id) || !v.is_coordinator) continue;
    auto m = v.gpsr.min_point();
    if (!m || *m > now) continue;
    const ProtocolTransition& tr = pa_->tr(tr_id);
    int best = -1;
    for (int j : tr.associated) {
      if (j == i_) continue;
      if (best == -1 || v.t_lu[j] < v.t_lu[best]) best = j;
    }
    if (best == -1) continue;  // single-owner conjunct: nobody to ask
    Message msg;
    msg.step = step_;
    msg.t_llc = t_llc_;
    msg.location = q_c_;
    msg.sender = i_;
    DelegateBody b;
    b.tr_id = tr_id;
    b.gpsr = v.gpsr;
    for (const auto& [j, lu] : v.t_lu) b.t_lu.emplace_back(j, lu);
    msg.body = std::move(b);
    out.sends.emplace_back(best, msg);
    v.is_coordinator = false;
  }

  if (!changed) return;

  bool complete = true;
  for (int id : pa_->outgoing[q_c_]) complete = complete && trc_contains(id);
  if (complete && tr_e_ >= 0) {
    enter_location(now, pa_->tr(tr_e_).target, tr_e_, out);
    return;
  }

  // Aggregate dissemination to processes that still need TrC knowledge.
  std::vector<int> recipients;
  for (int id : pa_->outgoing[q_c_]) {
    if (trc_contains(id)) continue;
    const ProtocolTransition& tr = pa_->tr(id);
    bool self_assoc = std::binary_search(tr.associated.begin(), tr.associated.end(), i_);
    for (int q : tr.associated) {
      if (q == i_) continue;
      if (!self_assoc) {
        recipients.push_back(q);
      } else {
        const TransitionView& v = views_.at(id);
        if (v.t_lu.at(q) < t_tr_e_) recipients.push_back(q);
      }
    }
  }
  std::sort(recipients.begin(), recipients.end());
  recipients.erase(std::unique(recipients.begin(), recipients.end()), recipients.end());
  for (int q : recipients) {
    Message msg;
    msg.step = step_;
    msg.t_llc = t_llc_;
    msg.location = q_c_;
    msg.sender = i_;
    AggregateBody b;
    b.trc = trc_;
    b.tr_e = tr_e_;
    b.t_tr_e = t_tr_e_;
    msg.body = std::move(b);
    out.sends.emplace_back(q, msg);
  }
}

MonitorOutput ProcessMonitor::begin(Time now) {
  MonitorOutput out;
  update(now, out);
  return out;
}

MonitorOutput ProcessMonitor::on_local_change(Time now, int ap, bool value) {
  auto it = history_.find(ap);
  if (it == history_.end()) throw std::logic_error("monitor: change for unowned proposition");
  if (it->second.back().second != value) it->second.emplace_back(now, value);
  MonitorOutput out;
  update(now, out);
  return out;
}

MonitorOutput ProcessMonitor::on_message(Time now, const Message& m) {
  MonitorOutput out;
  if (halted_) return out;
  if (m.is_verdict()) {
    halted_ = true;
    return out;
  }
  if (m.step < step_) return out;  // stale: belongs to a finished step
  if (m.step > step_) reset_step(m.step, m.t_llc, m.location);

  if (m.is_delegate()) {
    const auto& b = std::get<DelegateBody>(m.body);
    auto it = views_.find(b.tr_id);
    if (it == views_.end()) throw std::logic_error("monitor: Delegate for unassociated transition");
    TransitionView& v = it->second;
    v.gpsr = b.gpsr;
    for (const auto& [j, lu] : b.t_lu) v.t_lu[j] = lu;
    v.is_coordinator = true;
    // The sender incorporated our history only through its t_lu for us;
    // everything after that must be (re)scanned against our literals.
    v.scanned_to = v.t_lu[i_] + kTick;
  } else if (m.is_aggregate()) {
    const auto& b = std::get<AggregateBody>(m.body);
    for (int id : b.trc) {
      if (!trc_contains(id)) {
        trc_add(id);
        pending_changed_ = true;
      }
    }
    if (b.tr_e >= 0 &&
        (b.t_tr_e < t_tr_e_ || (b.t_tr_e == t_tr_e_ && b.tr_e < tr_e_))) {
      tr_e_ = b.tr_e;
      t_tr_e_ = b.t_tr_e;
      pending_changed_ = true;
    }
  } else if (m.is_step_start()) {
    if (step_start_seen_) return out;  // duplicate notification for this step
    const auto& b = std::get<StepStartBody>(m.body);
    for (int id : b.coordinated_trs) {
      auto it = views_.find(id);
      if (it == views_.end()) throw std::logic_error("monitor: StepStart for unassociated transition");
      it->second.is_coordinator = true;
    }
    step_start_seen_ = true;
  }

  update(now, out);
  return out;
}

}  // namespace decmon
