#include "decmon/message.hpp"

#include <sstream>
#include <stdexcept>

namespace decmon {

namespace {

std::string time_field(Time t) {
  return t == kTimeInf ? "inf" : std::to_string(t);
}

Time parse_time_field(const std::string& s) {
  if (s == "inf") return kTimeInf;
  return static_cast<Time>(std::stoll(s));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  if (s == "-") return out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

const char* Message::type_name() const {
  switch (body.index()) {
    case 0: return "Delegate";
    case 1: return "Aggregate";
    case 2: return "StepStart";
    case 3: return "Verdict";
  }
  return "?";
}

std::string serialize(const Message& m) {
  // Body fields follow the canonical order of each message type; times are
  // decimal microtick integers.
  std::ostringstream os;
  if (m.is_delegate()) {
    const auto& b = std::get<DelegateBody>(m.body);
    os << "Delegate " << m.step << " " << time_field(m.t_llc) << " " << m.location << " "
       << m.sender << " " << b.tr_id << " " << b.gpsr.to_wire() << " ";
    if (b.t_lu.empty()) {
      os << "-";
    } else {
      for (std::size_t i = 0; i < b.t_lu.size(); ++i) {
        if (i) os << ",";
        os << b.t_lu[i].first << ":" << time_field(b.t_lu[i].second);
      }
    }
  } else if (m.is_aggregate()) {
    const auto& b = std::get<AggregateBody>(m.body);
    os << "Aggregate " << m.step << " " << time_field(m.t_llc) << " " << m.location << " "
       << m.sender << " " << join_ints(b.trc) << " " << b.tr_e << " " << time_field(b.t_tr_e);
  } else if (m.is_step_start()) {
    const auto& b = std::get<StepStartBody>(m.body);
    os << "StepStart " << m.step << " " << time_field(m.t_llc) << " " << m.location << " "
       << m.sender << " " << join_ints(b.coordinated_trs);
  } else {
    const auto& b = std::get<VerdictBody>(m.body);
    os << "Verdict " << m.step << " " << time_field(m.t_llc) << " " << m.location << " "
       << m.sender << " " << to_string(b.verdict) << " " << time_field(b.at);
  }
  std::string payload = os.str();
  return std::to_string(payload.size()) + ":" + payload;
}

Message parse_message(const std::string& wire) {
  auto colon = wire.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("message: missing length prefix");
  std::size_t len = std::stoul(wire.substr(0, colon));
  std::string payload = wire.substr(colon + 1);
  if (payload.size() != len) throw std::invalid_argument("message: length mismatch");
  std::vector<std::string> f = split_ws(payload);
  if (f.size() < 5) throw std::invalid_argument("message: too few fields");
  Message m;
  m.step = std::stoi(f[1]);
  m.t_llc = parse_time_field(f[2]);
  m.location = std::stoi(f[3]);
  m.sender = std::stoi(f[4]);
  if (f[0] == "Delegate") {
    if (f.size() != 8) throw std::invalid_argument("Delegate: bad field count");
    DelegateBody b;
    b.tr_id = std::stoi(f[5]);
    b.gpsr = IntervalSet::from_wire(f[6]);
    if (f[7] != "-") {
      std::istringstream is(f[7]);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        auto sep = tok.find(':');
        if (sep == std::string::npos) throw std::invalid_argument("Delegate: bad t_lu entry");
        b.t_lu.emplace_back(std::stoi(tok.substr(0, sep)), parse_time_field(tok.substr(sep + 1)));
      }
    }
    m.body = std::move(b);
  } else if (f[0] == "Aggregate") {
    if (f.size() != 8) throw std::invalid_argument("Aggregate: bad field count");
    AggregateBody b;
    b.trc = parse_ints(f[5]);
    b.tr_e = std::stoi(f[6]);
    b.t_tr_e = parse_time_field(f[7]);
    m.body = std::move(b);
  } else if (f[0] == "StepStart") {
    if (f.size() != 6) throw std::invalid_argument("StepStart: bad field count");
    StepStartBody b;
    b.coordinated_trs = parse_ints(f[5]);
    m.body = std::move(b);
  } else if (f[0] == "Verdict") {
    if (f.size() != 7) throw std::invalid_argument("Verdict: bad field count");
    VerdictBody b;
    if (f[5] == "top") b.verdict = Verdict::Top;
    else if (f[5] == "bottom") b.verdict = Verdict::Bottom;
    else if (f[5] == "unknown") b.verdict = Verdict::Unknown;
    else throw std::invalid_argument("Verdict: bad verdict");
    b.at = parse_time_field(f[6]);
    m.body = std::move(b);
  } else {
    throw std::invalid_argument("message: unknown type " + f[0]);
  }
  return m;
}

}  // namespace decmon
