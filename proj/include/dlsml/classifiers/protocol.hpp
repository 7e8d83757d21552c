#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dlsml/classifiers/examples.hpp"
#include "dlsml/classifiers/model.hpp"
#include "dlsml/core/parallel.hpp"
#include "dlsml/core/rng.hpp"
#include "dlsml/dls.hpp"

namespace dlsml {

/// One (selection, classifier) cell of a comparison table. Both accuracies
/// are measured on the same held-out 30%.
struct ProtocolRow {
    OverSelection selection;
    std::size_t n_samples = 0;
    std::size_t dl_correct = 0;
    ClassifierKind kind = ClassifierKind::NaiveBayes;
    std::size_t classifier_correct = 0;

    double dl_accuracy() const { return static_cast<double>(dl_correct) / static_cast<double>(n_samples); }
    double classifier_accuracy() const {
        return static_cast<double>(classifier_correct) / static_cast<double>(n_samples);
    }
};

struct ProtocolResult {
    /// Selection-major, kinds in the requested order.
    std::vector<ProtocolRow> rows;
    /// Best kind per selection (first listed kind wins ties).
    std::vector<ProtocolRow> best;
};

inline ProtocolResult evaluate_protocol(const Dataset& data, const ResourceTable& table,
                                        std::span<const OverSelection> selections,
                                        std::span<const ClassifierKind> kinds, std::uint64_t seed,
                                        const Hyperparameters& hp = {}, unsigned jobs = 1) {
    if (selections.empty()) throw ArgumentError("at least one over selection is required");
    if (kinds.empty()) throw ArgumentError("at least one classifier kind is required");

    std::vector<TrainTestSplit> splits;
    splits.reserve(selections.size());
    for (const auto& sel : selections) {
        const auto examples = make_examples(data, table, sel);
        splits.push_back(split_70_30(examples, derive_seed(seed, "split:" + sel.label())));
    }

    ProtocolResult out;
    out.rows.resize(selections.size() * kinds.size());
    parallel_for(out.rows.size(), jobs, [&](std::size_t cell) {
        const std::size_t s = cell / kinds.size();
        const auto kind = kinds[cell % kinds.size()];
        const auto& split = splits[s];
        const auto model =
            train(kind, split.train, hp, derive_seed(seed, "train:" + selections[s].label() + ":" + std::string(to_string(kind))));
        ProtocolRow row;
        row.selection = selections[s];
        row.kind = kind;
        row.n_samples = split.test.size();
        for (const auto& ex : split.test) {
            if (ex.dl_prediction == ex.label) ++row.dl_correct;
            if (model.predict(ex) == ex.label) ++row.classifier_correct;
        }
        out.rows[cell] = row;
    });

    for (std::size_t s = 0; s < selections.size(); ++s) {
        const ProtocolRow* best = &out.rows[s * kinds.size()];
        for (std::size_t k = 1; k < kinds.size(); ++k) {
            const auto& r = out.rows[s * kinds.size() + k];
            if (r.classifier_correct > best->classifier_correct) best = &r;
        }
        out.best.push_back(*best);
    }
    return out;
}

inline std::string format_fraction(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/// selection,n_samples,dl_accuracy,kind,classifier_accuracy
inline void write_protocol_rows(std::ostream& out, std::span<const ProtocolRow> rows) {
    out << "selection,n_samples,dl_accuracy,kind,classifier_accuracy\n";
    for (const auto& r : rows) {
        out << r.selection.label() << ',' << r.n_samples << ',' << format_fraction(r.dl_accuracy()) << ','
            << to_string(r.kind) << ',' << format_fraction(r.classifier_accuracy()) << '\n';
    }
}

}  // namespace dlsml
