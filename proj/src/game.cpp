#include "dsg/game.hpp"

#include <cmath>
#include <sstream>

namespace dsg {

char ToChar(Action a) { return a == Action::kCooperate ? 'C' : 'D'; }

Action ActionFromChar(char c) {
  switch (c) {
    case 'C':
    case 'c':
      return Action::kCooperate;
    case 'D':
    case 'd':
      return Action::kDefect;
    default:
      throw ConfigError(std::string("unknown action '") + c + "'");
  }
}

std::string ToString(JointAction j) {
  return {'(', ToChar(j.citizen), ',', ToChar(j.ddo), ')'};
}

std::string IpdValidation::Describe() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

RewardPair Payoff(const PayoffMatrix& m, JointAction joint) {
  const bool c_coop = joint.citizen == Action::kCooperate;
  const bool d_coop = joint.ddo == Action::kCooperate;
  if (c_coop && d_coop) return {m.r, m.r};
  if (c_coop) return {m.s, m.t};
  if (d_coop) return {m.t, m.s};
  return {m.p, m.p};
}

IpdValidation ValidateIpd(const PayoffMatrix& m) {
  IpdValidation out;
  auto fmt = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  for (double v : {m.t, m.r, m.p, m.s}) {
    if (!std::isfinite(v)) {
      out.violations.push_back("payoffs must be finite");
      return out;
    }
  }
  if (!(m.t > m.r))
    out.violations.push_back("T>R fails (" + fmt(m.t) + " <= " + fmt(m.r) + ")");
  if (!(m.r > m.p))
    out.violations.push_back("R>P fails (" + fmt(m.r) + " <= " + fmt(m.p) + ")");
  if (!(m.p > m.s))
    out.violations.push_back("P>S fails (" + fmt(m.p) + " <= " + fmt(m.s) + ")");
  if (!(2.0 * m.r > m.t + m.s))
    out.violations.push_back("2R>T+S fails (" + fmt(2.0 * m.r) +
                             " <= " + fmt(m.t + m.s) + ")");
  return out;
}

void RequireIpd(const PayoffMatrix& matrix) {
  const IpdValidation v = ValidateIpd(matrix);
  if (!v.ok()) throw ConfigError("payoff matrix is not an IPD: " + v.Describe());
}

}  // namespace dsg
