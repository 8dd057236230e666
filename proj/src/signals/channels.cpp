#include "coman/signals/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coman/signals/power.hpp"

namespace coman::signals {

const char* to_string(GoalType t) {
    switch (t) {
        case GoalType::Hard: return "hard";
        case GoalType::Soft: return "soft";
        case GoalType::Follower: return "follower";
    }
    return "hard";
}

GoalType goal_type_from_string(const std::string& s) {
    if (s == "hard") return GoalType::Hard;
    if (s == "soft") return GoalType::Soft;
    if (s == "follower") return GoalType::Follower;
    throw std::invalid_argument("unknown goal type: " + s);
}

std::size_t TrialRecording::index_at(double time) const {
    if (t.empty()) return 0;
    auto it = std::lower_bound(t.begin(), t.end(), time);
    if (it == t.end()) return t.size() - 1;
    return static_cast<std::size_t>(it - t.begin());
}

void TrialRecording::validate() const {
    const std::size_t n = t.size();
    if (n < 2) throw std::invalid_argument("trial: need at least 2 samples");
    for (const auto& p : participants) {
        if (p.force.size() != n || p.velocity.size() != n || p.grasp_pos.size() != n) {
            throw std::invalid_argument("trial: sequence lengths differ");
        }
    }
    const double dt = 1.0 / rate_hz;
    for (std::size_t i = 1; i < n; ++i) {
        if (!(t[i] > t[i - 1])) throw std::invalid_argument("trial: time not strictly increasing");
        if (std::fabs((t[i] - t[i - 1]) - dt) > 1e-6 * dt + 1e-12) {
            throw std::invalid_argument("trial: time step does not match rate_hz");
        }
    }
    if (t_beep < t.front() || t_beep > t_end) {
        throw std::invalid_argument("trial: t_beep outside [t[0], t_end]");
    }
    if (layout.n_goals() < 1) throw std::invalid_argument("trial: layout needs at least one goal");
}

std::vector<double> moving_average(const std::vector<double>& x, int width) {
    if (width <= 1 || x.empty()) return x;
    const int half = width / 2;
    const int n = static_cast<int>(x.size());
    std::vector<double> out(x.size());
    double acc = 0.0;
    int lo = 0, hi = -1;  // current inclusive window [lo, hi]
    for (int i = 0; i < n; ++i) {
        const int want_lo = std::max(0, i - half);
        const int want_hi = std::min(n - 1, i + half);
        while (hi < want_hi) acc += x[static_cast<std::size_t>(++hi)];
        while (lo < want_lo) acc -= x[static_cast<std::size_t>(lo++)];
        out[static_cast<std::size_t>(i)] = acc / static_cast<double>(want_hi - want_lo + 1);
    }
    return out;
}

std::vector<double> time_derivative(const std::vector<double>& x, double rate_hz) {
    const std::vector<double> s = moving_average(x, 5);
    const std::size_t n = s.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d[0] = (s[1] - s[0]) * rate_hz;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = (s[i + 1] - s[i - 1]) * (0.5 * rate_hz);
    }
    d[n - 1] = (s[n - 1] - s[n - 2]) * rate_hz;
    return d;
}

PowerChannels power_channels(const TrialRecording& trial, int participant) {
    const ParticipantTrack& tr = trial.track(participant);
    const std::size_t n = trial.n_samples();
    const int ng = trial.layout.n_goals();

    PowerChannels out;
    out.abs_power.resize(n);
    out.projected.assign(static_cast<std::size_t>(ng), std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        out.abs_power[i] = std::fabs(raw_power(tr.force[i], tr.velocity[i]));
        for (int g = 1; g <= ng; ++g) {
            out.projected[static_cast<std::size_t>(g - 1)][i] =
                projected_power(tr.force[i], tr.velocity[i], tr.grasp_pos[i], trial.layout.goal(g));
        }
    }
    return out;
}

namespace {

struct ChannelSpec {
    std::string name;
    // which base signal, filled per participant below
    enum Kind { VelX, VelY, ForX, ForY, SumX, SumY, StrX, StrY, Pow, VProj, FProj, SumProj, StrProj, PProj } kind;
    int goal = 0;  // 1..N for projected kinds
};

std::vector<ChannelSpec> base_signals(int feature_set, int n_goals) {
    std::vector<ChannelSpec> specs;
    auto add = [&](const std::string& name, ChannelSpec::Kind kind, int goal = 0) {
        specs.push_back({name, kind, goal});
    };
    auto add_proj = [&](const std::string& prefix, ChannelSpec::Kind kind) {
        for (int g = 1; g <= n_goals; ++g) add(prefix + std::to_string(g), kind, g);
    };
    switch (feature_set) {
        case 1:
            add("v.x", ChannelSpec::VelX);
            add("v.y", ChannelSpec::VelY);
            add("F.x", ChannelSpec::ForX);
            add("F.y", ChannelSpec::ForY);
            add("Fsum.x", ChannelSpec::SumX);
            add("Fsum.y", ChannelSpec::SumY);
            add("Fstr.x", ChannelSpec::StrX);
            add("Fstr.y", ChannelSpec::StrY);
            add("P", ChannelSpec::Pow);
            add_proj("vp", ChannelSpec::VProj);
            add_proj("Fp", ChannelSpec::FProj);
            add_proj("Fsump", ChannelSpec::SumProj);
            add_proj("Fstrp", ChannelSpec::StrProj);
            add_proj("Pp", ChannelSpec::PProj);
            break;
        case 2:
            add_proj("vp", ChannelSpec::VProj);
            add_proj("Fp", ChannelSpec::FProj);
            add_proj("Fsump", ChannelSpec::SumProj);
            add_proj("Fstrp", ChannelSpec::StrProj);
            add_proj("Pp", ChannelSpec::PProj);
            break;
        case 3:
            add("P", ChannelSpec::Pow);
            add_proj("vp", ChannelSpec::VProj);
            add_proj("Fp", ChannelSpec::FProj);
            add_proj("Pp", ChannelSpec::PProj);
            break;
        default:
            throw std::invalid_argument("feature_set must be 1, 2 or 3");
    }
    return specs;
}

}  // namespace

int feature_set_signal_count(int feature_set, int n_goals) {
    return static_cast<int>(base_signals(feature_set, n_goals).size());
}

std::vector<std::string> feature_set_channel_names(int feature_set, int n_goals) {
    std::vector<std::string> names;
    for (const auto& s : base_signals(feature_set, n_goals)) {
        names.push_back(s.name);
        names.push_back("d:" + s.name);
    }
    return names;
}

SignalMatrix derive_channel_matrix(const TrialRecording& trial, int participant, int feature_set) {
    const int ng = trial.layout.n_goals();
    const std::size_t n = trial.n_samples();
    const ParticipantTrack& own = trial.track(participant);
    const ParticipantTrack& partner = trial.track(3 - participant);

    const auto specs = base_signals(feature_set, ng);

    SignalMatrix m;
    m.rate_hz = trial.rate_hz;
    m.channel_names = feature_set_channel_names(feature_set, ng);
    m.values.reserve(specs.size() * 2);

    std::vector<double> sig(n);
    for (const auto& spec : specs) {
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& f = own.force[i];
            const Vec2& v = own.velocity[i];
            const Vec2& gp = own.grasp_pos[i];
            const auto [f_sum, f_str] = pairwise_forces(f, partner.force[i]);
            double val = 0.0;
            switch (spec.kind) {
                case ChannelSpec::VelX: val = v.x; break;
                case ChannelSpec::VelY: val = v.y; break;
                case ChannelSpec::ForX: val = f.x; break;
                case ChannelSpec::ForY: val = f.y; break;
                case ChannelSpec::SumX: val = f_sum.x; break;
                case ChannelSpec::SumY: val = f_sum.y; break;
                case ChannelSpec::StrX: val = f_str.x; break;
                case ChannelSpec::StrY: val = f_str.y; break;
                case ChannelSpec::Pow: val = raw_power(f, v); break;
                case ChannelSpec::VProj: val = project_to_goal(v, gp, trial.layout.goal(spec.goal)); break;
                case ChannelSpec::FProj: val = project_to_goal(f, gp, trial.layout.goal(spec.goal)); break;
                case ChannelSpec::SumProj: val = project_to_goal(f_sum, gp, trial.layout.goal(spec.goal)); break;
                case ChannelSpec::StrProj: val = project_to_goal(f_str, gp, trial.layout.goal(spec.goal)); break;
                case ChannelSpec::PProj: val = projected_power(f, v, gp, trial.layout.goal(spec.goal)); break;
            }
            sig[i] = val;
        }
        m.values.push_back(sig);
        m.values.push_back(time_derivative(sig, trial.rate_hz));
    }
    return m;
}

}  // namespace coman::signals
