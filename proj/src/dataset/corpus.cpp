#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "coman/core/errors.hpp"
#include "coman/core/hash.hpp"
#include "coman/core/parallel.hpp"
#include "coman/dataset/corpus.hpp"
#include "coman/signals/channels.hpp"

namespace coman::dataset {

int Corpus::n_features() const { return feature_count(window, n_goals); }

std::uint64_t feature_fingerprint(const WindowSpec& spec, int n_goals, double rate_hz) {
    std::string blob = "coman-features-v1|set=" + std::to_string(spec.feature_set) +
                       "|L=" + std::to_string(spec.length_samples) + "|goals=" + std::to_string(n_goals) +
                       "|rate=" + std::to_string(rate_hz) + "|";
    for (const auto& name : signals::feature_set_channel_names(spec.feature_set, n_goals)) {
        blob += name;
        blob += ',';
    }
    return fnv1a64(blob);
}

namespace {

/// Largest-remainder allocation of the test quota across dyads.
std::set<std::int64_t> pick_test_trials(const std::vector<const signals::TrialRecording*>& usable,
                                        const CorpusOptions& options) {
    Rng rng(options.split_seed);
    std::set<std::int64_t> test;
    const auto target =
        static_cast<std::size_t>(std::llround(options.test_fraction * static_cast<double>(usable.size())));

    if (!options.stratify_by_dyad) {
        std::vector<std::int64_t> ids;
        for (const auto* t : usable) ids.push_back(t->meta.trial_id);
        for (std::size_t i = ids.size(); i > 1; --i) {
            std::swap(ids[i - 1], ids[rng.uniform_index(i)]);
        }
        for (std::size_t i = 0; i < target && i < ids.size(); ++i) test.insert(ids[i]);
        return test;
    }

    std::map<std::int64_t, std::vector<std::int64_t>> by_dyad;
    for (const auto* t : usable) by_dyad[t->meta.dyad_id].push_back(t->meta.trial_id);

    std::vector<std::pair<std::int64_t, double>> remainders;  // dyad -> fractional part
    std::size_t allocated = 0;
    std::map<std::int64_t, std::size_t> counts;
    for (auto& [dyad, ids] : by_dyad) {
        const double share = options.test_fraction * static_cast<double>(ids.size());
        counts[dyad] = static_cast<std::size_t>(share);
        allocated += counts[dyad];
        remainders.push_back({dyad, share - static_cast<double>(counts[dyad])});
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    for (std::size_t i = 0; i < remainders.size() && allocated < target; ++i, ++allocated) {
        counts[remainders[i].first] += 1;
    }

    for (auto& [dyad, ids] : by_dyad) {
        for (std::size_t i = ids.size(); i > 1; --i) {
            std::swap(ids[i - 1], ids[rng.uniform_index(i)]);
        }
        const std::size_t take = std::min(counts[dyad], ids.size());
        for (std::size_t i = 0; i < take; ++i) test.insert(ids[i]);
    }
    return test;
}

}  // namespace

Corpus build_corpus(const std::vector<signals::TrialRecording>& trials, const CorpusOptions& options) {
    if (trials.empty()) throw CorpusError("no trials");
    options.window.validate(trials.front().rate_hz);

    std::vector<const signals::TrialRecording*> usable;
    for (const auto& t : trials) {
        if (t.meta.usable) usable.push_back(&t);
    }
    if (usable.size() < 2) throw CorpusError("fewer than 2 usable trials");

    Corpus corpus;
    corpus.window = options.window;
    corpus.plan = options.plan;
    corpus.n_goals = usable.front()->layout.n_goals();
    corpus.rate_hz = usable.front()->rate_hz;
    corpus.channel_names =
        signals::feature_set_channel_names(options.window.feature_set, corpus.n_goals);
    corpus.fingerprint = feature_fingerprint(options.window, corpus.n_goals, corpus.rate_hz);

    const std::set<std::int64_t> test_ids = pick_test_trials(usable, options);

    struct TrialOutput {
        std::vector<LabeledWindow> windows;
        std::vector<SignalInstance> heldout;
        std::vector<std::string> warnings;
        bool is_test = false;
    };
    std::vector<TrialOutput> outputs(usable.size());

    parallel_for(usable.size(), [&](std::size_t i) {
        const signals::TrialRecording& trial = *usable[i];
        TrialOutput& out = outputs[i];
        out.is_test = test_ids.count(trial.meta.trial_id) > 0;
        Rng rng(derive_seed(options.plan.seed, static_cast<std::uint64_t>(trial.meta.trial_id)));
        for (int k = 1; k <= 2; ++k) {
            const auto ann = annotate_participant(trial, k, options.annotate);
            if (!ann) continue;
            if (ann->opposing || ann->weak) {
                out.heldout.push_back({trial.meta.trial_id, k, ann->opposing, ann->weak});
                continue;  // excluded from window sets, kept for signal-level eval
            }
            auto windows =
                neighborhood_sample(trial, *ann, options.window, options.plan, rng, &out.warnings);
            for (auto& w : windows) out.windows.push_back(std::move(w));
        }
    });

    std::map<int, std::set<std::int64_t>> trials_per_class;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        auto& out = outputs[i];
        auto& dst = out.is_test ? corpus.test : corpus.train;
        (out.is_test ? corpus.test_trials : corpus.train_trials).push_back(usable[i]->meta.trial_id);
        for (auto& w : out.windows) {
            trials_per_class[w.label].insert(w.trial_id);
            dst.push_back(std::move(w));
        }
        for (auto& h : out.heldout) corpus.heldout.push_back(h);
        for (auto& w : out.warnings) corpus.warnings.push_back(std::move(w));
    }

    for (int c = 0; c <= corpus.n_goals; ++c) {
        if (trials_per_class[c].size() < 2) {
            throw CorpusError("class " + std::to_string(c) + " present in fewer than 2 trials");
        }
    }
    return corpus;
}

}  // namespace coman::dataset
