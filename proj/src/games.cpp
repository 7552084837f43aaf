#include "gtcent/games.hpp"

#include <algorithm>

#include "gtcent/errors.hpp"

namespace gtcent {

const char* to_string(GameKind kind) {
    return kind == GameKind::Mwconn ? "mwconn" : "awconn";
}

GameKind game_kind_from_string(const std::string& name) {
    if (name == "mwconn") return GameKind::Mwconn;
    if (name == "awconn") return GameKind::Awconn;
    throw ValidationError("unknown game kind '" + name + "' (expected mwconn or awconn)");
}

namespace {

double component_effectiveness(const WeightedNetwork& net, Coalition comp) {
    if (comp.size() == 1) return net.node_weight(comp.lowest());
    double wsum = 0.0;
    for (std::uint64_t b = comp.bits(); b != 0; b &= b - 1)
        wsum += net.node_weight(std::countr_zero(b));
    double kmax = 0.0;
    for (const Edge& e : net.edges())
        if (comp.contains(e.a) && comp.contains(e.b)) kmax = std::max(kmax, e.weight);
    return wsum * kmax;
}

} // namespace

double effectiveness(const WeightedNetwork& net, Coalition S) {
    if (S.is_empty()) throw ValidationError("effectiveness is undefined for the empty coalition");
    if (!net.is_connected(S))
        throw ValidationError("effectiveness is undefined for a disconnected coalition");
    return component_effectiveness(net, S);
}

double contribution_range_bound(const WeightedNetwork& net) {
    if (net.edges().empty()) {
        double wmax = 0.0;
        for (int i = 0; i < net.size(); ++i) wmax = std::max(wmax, net.node_weight(i));
        return wmax;
    }
    double wsum = 0.0;
    for (int i = 0; i < net.size(); ++i) wsum += net.node_weight(i);
    double kmax = 0.0;
    for (const Edge& e : net.edges()) kmax = std::max(kmax, e.weight);
    return wsum * kmax;
}

double GameSpec::value(Coalition S) const {
    if (S.is_empty()) return 0.0;
    Coalition comps[64];
    const int count = net_->decompose(S, comps);
    if (count == 1) return component_effectiveness(*net_, comps[0]);
    double best = 0.0, total = 0.0;
    for (int c = 0; c < count; ++c) {
        const double f = component_effectiveness(*net_, comps[c]);
        best = std::max(best, f);
        total += f;
    }
    return kind_ == GameKind::Mwconn ? best : total;
}

double GameSpec::marginal(int i, Coalition S) const {
    if (S.contains(i))
        throw ValidationError("marginal contribution requires a coalition excluding the player");
    return value(S.with(i)) - value(S);
}

} // namespace gtcent
