#ifndef DSG_GAME_HPP_
#define DSG_GAME_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsg {

// Cooperate < Defect; loops over actions rely on this order.
enum class Action : std::uint8_t { kCooperate = 0, kDefect = 1 };

inline constexpr std::array<Action, 2> kActions = {Action::kCooperate,
                                                   Action::kDefect};

inline constexpr int Index(Action a) { return static_cast<int>(a); }
inline constexpr Action Flip(Action a) {
  return a == Action::kCooperate ? Action::kDefect : Action::kCooperate;
}
char ToChar(Action a);
Action ActionFromChar(char c);

// Four payoffs of the symmetric 2x2 data sharing game.
struct PayoffMatrix {
  double t = 6.0;  // temptation
  double r = 5.0;  // reward for mutual cooperation
  double p = 1.0;  // punishment for mutual defection
  double s = 0.0;  // sucker's payoff

  static constexpr PayoffMatrix Default() { return {}; }
  bool operator==(const PayoffMatrix&) const = default;
};

// (citizen, ddo). The citizen is the row player.
struct JointAction {
  Action citizen = Action::kCooperate;
  Action ddo = Action::kCooperate;

  JointAction Swapped() const { return {ddo, citizen}; }
  bool operator==(const JointAction&) const = default;
};

inline constexpr std::array<JointAction, 4> kJointActions = {
    JointAction{Action::kCooperate, Action::kCooperate},
    JointAction{Action::kCooperate, Action::kDefect},
    JointAction{Action::kDefect, Action::kCooperate},
    JointAction{Action::kDefect, Action::kDefect}};

// 0..3 in CC, CD, DC, DD order.
inline constexpr int Index(JointAction j) {
  return 2 * Index(j.citizen) + Index(j.ddo);
}
std::string ToString(JointAction j);

struct RewardPair {
  double citizen = 0.0;
  double ddo = 0.0;

  RewardPair Swapped() const { return {ddo, citizen}; }
  bool operator==(const RewardPair&) const = default;
};

// Outcome of the IPD check. Empty `violations` means the matrix is valid.
struct IpdValidation {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string Describe() const;
};

// Thrown when a scenario or parameter set cannot be used.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RewardPair Payoff(const PayoffMatrix& matrix, JointAction joint);

// Checks T > R > P > S and 2R > T + S, naming every failed inequality.
IpdValidation ValidateIpd(const PayoffMatrix& matrix);

// Throws ConfigError with the violation report when the matrix is not an IPD.
void RequireIpd(const PayoffMatrix& matrix);

// Average of the two agents' rewards.
inline double SocialUtility(RewardPair rewards) {
  return (rewards.citizen + rewards.ddo) / 2.0;
}

}  // namespace dsg

#endif  // DSG_GAME_HPP_
