#pragma once

#include <string>

#include "gtcent/coalition.hpp"
#include "gtcent/network.hpp"

namespace gtcent {

enum class GameKind { Mwconn, Awconn };

const char* to_string(GameKind kind);
GameKind game_kind_from_string(const std::string& name);

/// Effectiveness of a connected, non-empty coalition: the member weight for
/// singletons, otherwise (sum of member weights) * (max internal edge weight).
/// Throws ValidationError if S is empty or disconnected.
double effectiveness(const WeightedNetwork& net, Coalition S);

/// Upper bound on any marginal contribution of either game kind:
/// (sum of all node weights) * (max edge weight). Degenerates to the largest
/// node weight on an edgeless network.
double contribution_range_bound(const WeightedNetwork& net);

/// A weighted-connectivity TU-game over an immutable network. value() and
/// marginal() are pure and safe for unsynchronized concurrent calls.
class GameSpec {
public:
    GameSpec(const WeightedNetwork& net, GameKind kind) : net_(&net), kind_(kind) {}

    const WeightedNetwork& network() const { return *net_; }
    GameKind kind() const { return kind_; }

    /// Characteristic function. v(empty) = 0; connected coalitions score
    /// their effectiveness; disconnected ones combine component
    /// effectiveness by max (Mwconn) or sum (Awconn).
    double value(Coalition S) const;

    /// v(S + i) - v(S). Throws ValidationError if i is already in S.
    double marginal(int i, Coalition S) const;

private:
    const WeightedNetwork* net_;
    GameKind kind_;
};

} // namespace gtcent
