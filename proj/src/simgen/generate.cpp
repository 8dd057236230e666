#include "coman/simgen/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coman/core/parallel.hpp"
#include "coman/core/rng.hpp"
#include "coman/signals/power.hpp"

namespace coman::simgen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOnsetFraction = 0.1;   // power-onset definition, matches the detector's tau
constexpr double kTruthChannelFloor = 0.4; // channels below this fraction of the best peak carry no onset
constexpr double kFollowDelay = 0.04;    // s, follower starts mirroring after this
constexpr double kFollowLag = 0.03;      // s, first-order tracking constant
constexpr double kNavRamp = 0.5;         // s, navigation servo fade-in
constexpr double kWalkSpeedRef = 0.45;   // m/s, artifact reaches full amplitude at cruise
constexpr double kOpposingPower = -0.05; // W, episode threshold
constexpr double kOpposingMinLen = 0.1;  // s

double ramp01(double x) { return std::clamp(x, 0.0, 1.0); }

/// Raised cosine: 0 at s=0 and s=1, peak 1 at s=0.5.
double raised_cosine(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return 0.5 * (1.0 - std::cos(2.0 * kPi * s));
}

enum class Part {
    Initiator,   // decisive push, then navigate (leader, same-goal pair, probe partner)
    Follower,    // mirrors the partner's force with a short lag
    Prober,      // indecisive soft: weak own-goal hump, then mirrors partner
    Winner,      // conflict side that keeps pushing (hump held until concession)
    Yielder,     // conflict side that resists, then concedes
    Staler       // unresolved conflict: resists, then gives up
};

struct ParticipantPlan {
    Part part = Part::Initiator;
    int goal = 0;        // intended goal while expressing (0 for pure follower)
    double onset = 0.0;  // force onset
    double amp = 0.0;
    double dur = 0.0;
    double nav_from = 0.0;
    // conflict timing
    double resist_start = 0.0;
    double concede_start = 0.0;
    double resist_amp = 0.0;
    double give_up = 0.0;
    // probe
    double follow_from = 0.0;
    // ground-truth label switch (own goal -> final goal)
    bool has_switch = false;
    double intent_switch = 0.0;
    // walking artifact parameters
    double walk_freq = 2.0;
    double walk_phase = 0.0;
    Vec2 walk_dir{1.0, 0.0};
};

struct TrialPlan {
    std::array<ParticipantPlan, 2> p{};
    int final_goal = 0;
    bool stalemate = false;
};

TrialPlan plan_trial(const ScenarioConfig& cfg, Rng& rng) {
    const auto& roles = cfg.roles;
    const bool follower0 = roles[0].type == signals::GoalType::Follower;
    const bool follower1 = roles[1].type == signals::GoalType::Follower;
    if (follower0 && follower1) {
        throw std::invalid_argument("simgen: follower-follower dyads never initiate");
    }

    TrialPlan plan;
    auto& p = plan.p;
    for (int k = 0; k < 2; ++k) {
        p[k].goal = roles[k].assigned_goal;
        p[k].onset = cfg.t_beep + rng.uniform(0.5, 1.1);
        p[k].amp = rng.uniform(cfg.hump_amp_min, cfg.hump_amp_max);
        p[k].dur = rng.uniform(cfg.hump_dur_min, cfg.hump_dur_max);
        p[k].walk_freq = cfg.walk_freq + rng.uniform(-0.3, 0.3);
        p[k].walk_phase = rng.uniform(0.0, 2.0 * kPi);
        const double a = rng.uniform(0.0, 2.0 * kPi);
        p[k].walk_dir = {std::cos(a), std::sin(a)};
    }

    if (follower0 || follower1) {
        const int lead = follower0 ? 1 : 0;
        const int foll = 1 - lead;
        // Slow humps keep the tracking gap below the conflict threshold.
        p[lead].dur = rng.uniform(std::max(0.8, cfg.hump_dur_min), cfg.hump_dur_max);
        p[lead].amp = rng.uniform(cfg.hump_amp_min, std::min(cfg.hump_amp_max, cfg.hump_amp_min + 2.0));
        p[lead].nav_from = p[lead].onset + 0.8 * p[lead].dur;
        p[foll].part = Part::Follower;
        p[foll].goal = p[lead].goal;
        p[foll].onset = p[lead].onset + kFollowDelay;
        plan.final_goal = p[lead].goal;
        return plan;
    }

    if (roles[0].assigned_goal == roles[1].assigned_goal) {
        // Cooperative pair: shared onset and hump length, amplitudes within 15%.
        p[1].onset = p[0].onset;
        p[1].dur = p[0].dur;
        p[1].amp = p[0].amp * rng.uniform(0.85, 1.0);
        for (int k = 0; k < 2; ++k) p[k].nav_from = p[k].onset + 0.8 * p[k].dur;
        plan.final_goal = roles[0].assigned_goal;
        return plan;
    }

    // Different goals. An indecisive soft participant probes, then follows.
    int prober = -1;
    for (int k = 0; k < 2; ++k) {
        if (roles[k].type == signals::GoalType::Soft && cfg.behavior[static_cast<std::size_t>(k)] == Behavior::Indecisive) {
            prober = k;
            break;
        }
    }
    if (prober >= 0) {
        const int other = 1 - prober;
        p[other].nav_from = p[other].onset + 0.8 * p[other].dur;
        p[prober].part = Part::Prober;
        p[prober].onset = std::max(cfg.t_beep + 0.5, p[other].onset + rng.uniform(-0.15, 0.2));
        p[prober].amp = rng.uniform(2.5, 4.0);
        p[prober].dur = rng.uniform(0.3, 0.5);
        p[prober].follow_from = std::max(p[prober].onset, p[other].onset) + cfg.reaction_time;
        p[prober].has_switch = true;
        p[prober].intent_switch = p[prober].follow_from;
        plan.final_goal = p[other].goal;
        return plan;
    }

    // Decisive conflict: who yields?
    const bool hard0 = roles[0].type == signals::GoalType::Hard;
    const bool hard1 = roles[1].type == signals::GoalType::Hard;
    int yielder = -1;
    if (hard0 && hard1) {
        yielder = -1;
    } else if (hard0 != hard1) {
        const int soft = hard0 ? 1 : 0;
        if (rng.bernoulli(cfg.p_yield)) yielder = soft;
    } else {
        const bool w0 = rng.bernoulli(cfg.p_yield);
        const bool w1 = rng.bernoulli(cfg.p_yield);
        if (w0 && w1) yielder = p[0].onset <= p[1].onset ? 1 : 0;  // later mover concedes
        else if (w0) yielder = 0;
        else if (w1) yielder = 1;
    }

    // Overlapping humps so the stretch actually builds up.
    p[1].onset = std::max(cfg.t_beep + 0.5, p[0].onset + rng.uniform(-0.3, 0.3));
    const double t_conf = std::max(p[0].onset, p[1].onset) + 0.15;

    if (yielder < 0) {
        plan.stalemate = true;
        plan.final_goal = 0;
        for (int k = 0; k < 2; ++k) {
            p[k].part = Part::Staler;
            p[k].resist_start = t_conf + rng.uniform(0.10, 0.25);
            p[k].resist_amp = 0.4 * p[k].amp;
            p[k].give_up = p[k].resist_start + rng.uniform(1.0, 1.5);
        }
        return plan;
    }

    const int winner = 1 - yielder;
    p[winner].part = Part::Winner;
    p[winner].amp = rng.uniform(cfg.hump_amp_max - 1.0, cfg.hump_amp_max + 1.0);
    p[yielder].part = Part::Yielder;
    p[yielder].amp = rng.uniform(cfg.hump_amp_min - 1.0, cfg.hump_amp_min + 0.5);
    p[yielder].resist_start = t_conf + rng.uniform(0.10, 0.25);
    p[yielder].concede_start = p[yielder].resist_start + rng.uniform(0.35, 0.70);
    p[yielder].resist_amp = 0.4 * p[yielder].amp;
    p[yielder].has_switch = true;
    p[yielder].intent_switch = p[yielder].concede_start + 0.5 * cfg.reaction_time;
    p[yielder].nav_from = p[yielder].concede_start;
    p[winner].concede_start = p[yielder].concede_start;
    p[winner].nav_from = p[yielder].concede_start;
    plan.final_goal = p[winner].goal;
    return plan;
}

struct CleanSeries {
    std::vector<Vec2> force[2];
    std::vector<Vec2> velocity;  // object velocity (both grasp points share it)
    std::vector<Vec2> pos;       // object position
};

}  // namespace

signals::GoalLayout default_layout(int n_goals, double distance, double separation_deg) {
    signals::GoalLayout layout;
    layout.start = {0.0, 0.0};
    const double mid = 0.5 * (n_goals + 1);
    for (int i = 1; i <= n_goals; ++i) {
        const double angle = (90.0 + (mid - i) * separation_deg) * kPi / 180.0;
        layout.goals.push_back({distance * std::cos(angle), distance * std::sin(angle)});
    }
    return layout;
}

double force_snr_db(const ScenarioConfig& config) {
    const double noise_rms =
        std::sqrt(config.force_noise_std * config.force_noise_std + 0.5 * config.walk_amp * config.walk_amp);
    return 20.0 * std::log10(config.hump_amp_min / std::max(noise_rms, 1e-12));
}

GeneratedTrial generate_trial(const ScenarioConfig& cfg) {
    Rng rng(cfg.seed);
    const TrialPlan plan = plan_trial(cfg, rng);

    const double dt = 1.0 / cfg.rate_hz;
    const std::size_t n = static_cast<std::size_t>(std::llround(cfg.duration * cfg.rate_hz)) + 1;
    const std::array<Vec2, 2> grasp_offset{Vec2{-0.3, 0.0}, Vec2{0.3, 0.0}};
    const int follow_steps = std::max<int>(1, static_cast<int>(std::llround(kFollowDelay * cfg.rate_hz)));

    CleanSeries clean;
    clean.velocity.resize(n);
    clean.pos.resize(n);
    for (auto& f : clean.force) f.resize(n);

    Vec2 pos = cfg.layout.start;
    Vec2 vel{0.0, 0.0};
    std::array<Vec2, 2> tracker{};  // follower/prober mirrored force state

    auto goal_dir = [&](const Vec2& from, int goal) {
        return signals::goal_direction(from, cfg.layout.goal(goal));
    };

    auto nav_share = [&](const Vec2& obj_pos, const Vec2& obj_vel) -> Vec2 {
        if (plan.final_goal == 0) return {0.0, 0.0};
        const Vec2 to_goal = cfg.layout.goal(plan.final_goal) - obj_pos;
        const double dist = to_goal.norm();
        Vec2 v_des{0.0, 0.0};
        if (dist >= cfg.arrive_dist) {
            v_des = to_goal * (cfg.v_cruise * std::min(1.0, dist / 0.6) / dist);
        }
        return (v_des - obj_vel) * (0.5 * cfg.servo_gain);
    };

    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        clean.pos[i] = pos;
        clean.velocity[i] = vel;

        Vec2 force[2];
        for (int k = 0; k < 2; ++k) {
            const ParticipantPlan& pp = plan.p[static_cast<std::size_t>(k)];
            const Vec2 grasp = pos + grasp_offset[static_cast<std::size_t>(k)];
            Vec2 f{0.0, 0.0};

            auto hump = [&](double amp, double onset, double dur, int goal) -> Vec2 {
                const double env = raised_cosine((t - onset) / dur);
                if (env <= 0.0 || goal == 0) return {0.0, 0.0};
                return goal_dir(grasp, goal) * (amp * env);
            };
            auto resist = [&]() -> Vec2 {
                const double speed = vel.norm();
                if (speed < 1e-6) return {0.0, 0.0};
                return vel * (-pp.resist_amp * std::min(1.0, speed / 0.1) / speed);
            };

            switch (pp.part) {
                case Part::Initiator: {
                    f = hump(pp.amp, pp.onset, pp.dur, pp.goal);
                    f += nav_share(pos, vel) * ramp01((t - pp.nav_from) / kNavRamp);
                    break;
                }
                case Part::Follower: {
                    f = tracker[static_cast<std::size_t>(k)];
                    break;
                }
                case Part::Prober: {
                    const Vec2 probe = hump(pp.amp, pp.onset, pp.dur, pp.goal);
                    const double r = ramp01((t - pp.follow_from) / 0.15);
                    f = probe * (1.0 - r) + tracker[static_cast<std::size_t>(k)] * r;
                    break;
                }
                case Part::Winner: {
                    const double s = (t - pp.onset) / pp.dur;
                    double env = raised_cosine(s);
                    if (s > 0.5) env = std::max(env, 0.7);
                    if (s <= 0.0) env = 0.0;
                    env *= 1.0 - ramp01((t - pp.concede_start) / 0.2);
                    if (pp.goal != 0) f = goal_dir(grasp, pp.goal) * (pp.amp * env);
                    f += nav_share(pos, vel) * ramp01((t - pp.nav_from) / kNavRamp);
                    break;
                }
                case Part::Yielder: {
                    const Vec2 h = hump(pp.amp, pp.onset, pp.dur, pp.goal);
                    const double r1 = ramp01((t - pp.resist_start) / 0.1);
                    const double r2 = ramp01((t - pp.concede_start) / cfg.reaction_time);
                    const Vec2 mid = h * (1.0 - r1) + resist() * r1;
                    f = mid * (1.0 - r2) + nav_share(pos, vel) * r2;
                    break;
                }
                case Part::Staler: {
                    const Vec2 h = hump(pp.amp, pp.onset, pp.dur, pp.goal);
                    const double r1 = ramp01((t - pp.resist_start) / 0.1);
                    Vec2 mid = h * (1.0 - r1) + resist() * r1;
                    mid *= 1.0 - ramp01((t - pp.give_up) / 0.3);
                    f = mid;
                    break;
                }
            }
            force[k] = f;
        }

        // Followers mirror the partner's force after a pure delay plus a
        // first-order lag; update after both true forces are known.
        for (int k = 0; k < 2; ++k) {
            const ParticipantPlan& pp = plan.p[static_cast<std::size_t>(k)];
            if (pp.part != Part::Follower && pp.part != Part::Prober) continue;
            const std::size_t di = i >= static_cast<std::size_t>(follow_steps)
                                       ? i - static_cast<std::size_t>(follow_steps)
                                       : 0;
            const Vec2 target = i >= static_cast<std::size_t>(follow_steps)
                                    ? clean.force[1 - k][di]
                                    : Vec2{0.0, 0.0};
            tracker[static_cast<std::size_t>(k)] += (target - tracker[static_cast<std::size_t>(k)]) * (dt / kFollowLag);
        }

        clean.force[0][i] = force[0];
        clean.force[1][i] = force[1];

        // Exact step of m v' = F - c v with zero-order-hold force.
        const Vec2 f_tot = force[0] + force[1];
        const Vec2 v_inf = f_tot / cfg.damping;
        const double decay = std::exp(-cfg.damping * dt / cfg.object_mass);
        const Vec2 dv = vel - v_inf;
        pos += v_inf * dt + dv * (cfg.object_mass / cfg.damping) * (1.0 - decay);
        vel = v_inf + dv * decay;
    }

    // Measured signals.
    signals::TrialRecording trial;
    trial.rate_hz = cfg.rate_hz;
    trial.t_beep = cfg.t_beep;
    trial.t_end = static_cast<double>(n - 1) * dt;
    trial.layout = cfg.layout;
    trial.meta.trial_id = cfg.trial_id;
    trial.meta.dyad_id = cfg.dyad_id;
    trial.meta.participant = cfg.roles;
    trial.meta.usable = !plan.stalemate;
    trial.t.resize(n);
    for (auto& track : trial.participants) {
        track.force.resize(n);
        track.velocity.resize(n);
        track.grasp_pos.resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        trial.t[i] = t;
        const double speed_gate = std::min(1.0, clean.velocity[i].norm() / kWalkSpeedRef);
        for (int k = 0; k < 2; ++k) {
            const ParticipantPlan& pp = plan.p[static_cast<std::size_t>(k)];
            auto& track = trial.participants[static_cast<std::size_t>(k)];
            const Vec2 f_noise{rng.normal(0.0, cfg.force_noise_std), rng.normal(0.0, cfg.force_noise_std)};
            const double walk = cfg.walk_amp * std::sin(2.0 * kPi * pp.walk_freq * t + pp.walk_phase) * speed_gate;
            track.force[i] = clean.force[k][i] + f_noise + pp.walk_dir * walk;
            const Vec2 v_noise{rng.normal(0.0, cfg.velocity_noise_std), rng.normal(0.0, cfg.velocity_noise_std)};
            track.velocity[i] = clean.velocity[i] + v_noise;
            track.grasp_pos[i] = clean.pos[i] + grasp_offset[static_cast<std::size_t>(k)];
        }
    }

    // Ground truth from the noiseless series.
    GroundTruth truth;
    truth.final_goal = plan.final_goal;
    truth.stalemate = plan.stalemate;

    std::vector<double> stretch(n);
    for (std::size_t i = 0; i < n; ++i) stretch[i] = (clean.force[0][i] - clean.force[1][i]).norm();
    truth.max_stretch = *std::max_element(stretch.begin(), stretch.end());
    {
        const int hold = static_cast<int>(std::llround(0.04 * cfg.rate_hz));
        int run = 0;
        for (std::size_t i = 0; i < n; ++i) {
            run = stretch[i] > cfg.conflict_threshold ? run + 1 : 0;
            if (run >= hold) {
                truth.conflict = true;
                break;
            }
        }
    }

    const int ng = cfg.layout.n_goals();
    for (int k = 0; k < 2; ++k) {
        const ParticipantPlan& pp = plan.p[static_cast<std::size_t>(k)];
        ParticipantTruth& pt = truth.participant[static_cast<std::size_t>(k)];
        pt.yielded = pp.part == Part::Yielder;
        pt.force_onset = pp.part == Part::Follower ? pp.onset : pp.onset;

        // Clean power channels.
        std::vector<double> abs_p(n);
        std::vector<std::vector<double>> proj(static_cast<std::size_t>(ng), std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 grasp = clean.pos[i] + grasp_offset[static_cast<std::size_t>(k)];
            const double p = signals::raw_power(clean.force[k][i], clean.velocity[i]);
            abs_p[i] = std::fabs(p);
            for (int g = 1; g <= ng; ++g) {
                proj[static_cast<std::size_t>(g - 1)][i] = signals::projected_power(
                    clean.force[k][i], clean.velocity[i], grasp, cfg.layout.goal(g));
            }
        }

        // First-hump window end; navigation power stays out of the window
        // so the recorded peak is the hump crest.
        double cap = pp.onset + pp.dur;
        if (pp.part == Part::Yielder || pp.part == Part::Staler) cap = std::min(cap, pp.resist_start);
        if (pp.part == Part::Prober) cap = std::min(cap, pp.follow_from);
        if (pp.part == Part::Follower) cap = pp.onset + plan.p[static_cast<std::size_t>(1 - k)].dur;
        cap = std::min(cap, trial.t_end);
        const std::size_t lo = static_cast<std::size_t>(std::llround(std::max(pp.onset, 0.0) * cfg.rate_hz));
        const std::size_t hi = std::min(n - 1, static_cast<std::size_t>(std::llround(cap * cfg.rate_hz)));

        auto channel_onset = [&](const std::vector<double>& ch, double* peak_time, double* peak_mag) {
            std::size_t best = lo;
            for (std::size_t i = lo; i <= hi; ++i) {
                if (ch[i] > ch[best]) best = i;
            }
            *peak_mag = ch[best];
            *peak_time = trial.t[best];
            const double level = kOnsetFraction * ch[best];
            for (std::size_t i = best; i > 0; --i) {
                if (ch[i - 1] < level && ch[i] >= level) {
                    const double frac = (level - ch[i - 1]) / (ch[i] - ch[i - 1]);
                    return trial.t[i - 1] + frac * dt;
                }
            }
            return trial.t.front();
        };

        double best_peak_mag = 0.0;
        double abs_peak_time = 0.0, abs_peak_mag = 0.0;
        channel_onset(abs_p, &abs_peak_time, &abs_peak_mag);

        std::vector<double> onsets, mags, times;
        for (int c = 0; c <= ng; ++c) {
            const std::vector<double>& ch = c == 0 ? abs_p : proj[static_cast<std::size_t>(c - 1)];
            double ptime = 0.0, pmag = 0.0;
            const double onset = channel_onset(ch, &ptime, &pmag);
            onsets.push_back(onset);
            mags.push_back(pmag);
            times.push_back(ptime);
            best_peak_mag = std::max(best_peak_mag, pmag);
        }
        pt.power_onset = trial.t_end;
        pt.peak_lo = trial.t_end;
        pt.peak_hi = 0.0;
        for (std::size_t c = 0; c < onsets.size(); ++c) {
            if (mags[c] < kTruthChannelFloor * best_peak_mag || mags[c] <= 1e-9) continue;
            pt.power_onset = std::min(pt.power_onset, onsets[c]);
            // Crest plateau: at 10 dB the noise floor makes any sample within
            // 10% of a channel's first peak indistinguishable from it.
            const std::vector<double>& ch = c == 0 ? abs_p : proj[c - 1];
            const std::size_t pk = static_cast<std::size_t>(std::llround(times[c] * cfg.rate_hz));
            const double floor90 = 0.90 * mags[c];
            std::size_t a = pk, b = pk;
            while (a > lo && ch[a - 1] >= floor90) --a;
            while (b < hi && ch[b + 1] >= floor90) ++b;
            pt.peak_lo = std::min(pt.peak_lo, trial.t[a]);
            pt.peak_hi = std::max(pt.peak_hi, trial.t[b]);
        }
        pt.first_peak_time = abs_peak_time;

        // Label sequence.
        pt.intent.resize(n, 0);
        const int own_goal = pp.goal;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = trial.t[i];
            if (t < pt.power_onset) continue;
            int label = own_goal;
            if (pp.has_switch && t >= pp.intent_switch) label = plan.final_goal;
            pt.intent[i] = label;
        }

        // Opposing episode: clean power below threshold, followed by a switch.
        const int min_len = static_cast<int>(std::llround(kOpposingMinLen * cfg.rate_hz));
        int run = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = signals::raw_power(clean.force[k][i], clean.velocity[i]);
            if (p < kOpposingPower) {
                ++run;
                if (run >= min_len && !pt.opposing) {
                    const double ep_start = trial.t[i + 1 - static_cast<std::size_t>(run)];
                    if (pp.has_switch && pp.intent_switch > ep_start) {
                        pt.opposing = true;
                        pt.opposing_start = ep_start;
                        pt.opposing_end = trial.t[i];
                    }
                }
                if (pt.opposing && run >= min_len) pt.opposing_end = trial.t[i];
            } else {
                if (pt.opposing && run > 0) break;  // first episode recorded
                run = 0;
            }
        }
    }

    if (plan.stalemate) {
        truth.consensus_time = -1.0;
    } else {
        double consensus = 0.0;
        for (int k = 0; k < 2; ++k) {
            const ParticipantPlan& pp = plan.p[static_cast<std::size_t>(k)];
            const ParticipantTruth& pt = truth.participant[static_cast<std::size_t>(k)];
            consensus = std::max(consensus, pp.has_switch ? pp.intent_switch : pt.power_onset);
        }
        truth.consensus_time = consensus;
    }

    trial.validate();
    return {std::move(trial), truth};
}

std::vector<GeneratedTrial> generate_corpus(const CorpusGenConfig& config) {
    std::vector<GeneratedTrial> out(static_cast<std::size_t>(config.n_trials));

    // Per-trial configs are planned serially (cheap) so the category draw
    // order is fixed; the simulation itself runs in parallel.
    std::vector<ScenarioConfig> cfgs(static_cast<std::size_t>(config.n_trials));
    Rng mix_rng(derive_seed(config.seed, 0x6d6978ULL));
    const MixConfig& m = config.mix;
    const double weights[6] = {m.follower, m.same_goal, m.conflict_hard_soft,
                               m.conflict_soft_soft, m.probe_soft, m.hard_hard};
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) throw std::invalid_argument("simgen: mix weights sum to zero");

    const int ng = config.base.layout.n_goals();
    for (int i = 0; i < config.n_trials; ++i) {
        ScenarioConfig cfg = config.base;
        cfg.trial_id = i;
        cfg.dyad_id = i / std::max(1, config.trials_per_dyad);
        cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i) + 1);
        cfg.behavior = {Behavior::Decisive, Behavior::Decisive};

        double pick = mix_rng.uniform01() * total;
        int cat = 0;
        for (; cat < 5; ++cat) {
            if (pick < weights[cat]) break;
            pick -= weights[cat];
        }
        const int first = mix_rng.bernoulli(0.5) ? 0 : 1;  // which index leads
        const int second = 1 - first;
        auto pick_goal = [&]() { return 1 + static_cast<int>(mix_rng.uniform_index(static_cast<std::uint64_t>(ng))); };
        auto pick_other_goal = [&](int g) {
            int o = 1 + static_cast<int>(mix_rng.uniform_index(static_cast<std::uint64_t>(ng - 1)));
            if (o >= g) ++o;
            return o;
        };
        auto& fr = cfg.roles[static_cast<std::size_t>(first)];
        auto& sr = cfg.roles[static_cast<std::size_t>(second)];
        switch (cat) {
            case 0:  // leader + follower
                fr.assigned_goal = pick_goal();
                fr.type = mix_rng.bernoulli(0.5) ? signals::GoalType::Hard : signals::GoalType::Soft;
                sr.assigned_goal = 0;
                sr.type = signals::GoalType::Follower;
                break;
            case 1:  // same goal
                fr.assigned_goal = pick_goal();
                sr.assigned_goal = fr.assigned_goal;
                fr.type = mix_rng.bernoulli(0.5) ? signals::GoalType::Hard : signals::GoalType::Soft;
                sr.type = mix_rng.bernoulli(0.5) ? signals::GoalType::Hard : signals::GoalType::Soft;
                break;
            case 2:  // hard vs soft
                fr.assigned_goal = pick_goal();
                fr.type = signals::GoalType::Hard;
                sr.assigned_goal = pick_other_goal(fr.assigned_goal);
                sr.type = signals::GoalType::Soft;
                break;
            case 3:  // soft vs soft
                fr.assigned_goal = pick_goal();
                fr.type = signals::GoalType::Soft;
                sr.assigned_goal = pick_other_goal(fr.assigned_goal);
                sr.type = signals::GoalType::Soft;
                break;
            case 4:  // probing soft vs decisive hard
                fr.assigned_goal = pick_goal();
                fr.type = signals::GoalType::Hard;
                sr.assigned_goal = pick_other_goal(fr.assigned_goal);
                sr.type = signals::GoalType::Soft;
                cfg.behavior[static_cast<std::size_t>(second)] = Behavior::Indecisive;
                break;
            default:  // hard vs hard
                fr.assigned_goal = pick_goal();
                fr.type = signals::GoalType::Hard;
                sr.assigned_goal = pick_other_goal(fr.assigned_goal);
                sr.type = signals::GoalType::Hard;
                break;
        }
        cfgs[static_cast<std::size_t>(i)] = cfg;
    }

    parallel_for(static_cast<std::size_t>(config.n_trials), [&](std::size_t i) {
        out[i] = generate_trial(cfgs[i]);
    });
    return out;
}

}  // namespace coman::simgen
