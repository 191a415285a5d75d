// Copyright 2026 The qboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "qboost/analysis.h"
#include "qboost/distributional.h"
#include "qboost/experiment.h"

using namespace qboost;

namespace {

struct Common {
    int n = 10;
    uint64_t seed = 0;
    std::string seeds;
    double eps = 0.1;
    double delta = 0.1;
    std::string mode = "exact";
    double opt_lb = 1.0;
    std::string out;
    double c1 = MansourConstants{}.c1;
    double c2 = MansourConstants{}.c2;
    int size = 0;
    int k = 0;
    int width = 0;
    int m = 0;
    int class_size = 0;
    int class_k = 0;
    int class_m = 0;
    double tau = 0;
    double max_t_max = BoostingLimits{}.max_t_max;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--n", c.n, "Number of qubits");
    cmd->add_option("--seed", c.seed, "Single seed");
    cmd->add_option("--seeds", c.seeds, "Seed list 'a,b,c' or range 'a-b' (inclusive)");
    cmd->add_option("--eps", c.eps, "Accuracy");
    cmd->add_option("--delta", c.delta, "Failure probability");
    cmd->add_option("--mode", c.mode, "exact or sampled");
    cmd->add_option("--opt-lb", c.opt_lb, "Planted fidelity floor");
    cmd->add_option("--out", c.out, "Output path (JSONL or CSV); stdout when absent");
    cmd->add_option("--mansour-c1", c.c1, "Mansour exponent constant");
    cmd->add_option("--mansour-c2", c.c2, "Mansour log constant");
    cmd->add_option("--size", c.size, "Planted tree size or DNF term count");
    cmd->add_option("--k", c.k, "Planted junta arity or TAC threshold");
    cmd->add_option("--width", c.width, "Planted DNF term width");
    cmd->add_option("--m", c.m, "Planted TAC fan-in");
    cmd->add_option("--class-size", c.class_size, "Class size given to the learner (default: planted)");
    cmd->add_option("--class-k", c.class_k, "Class arity given to the learner (default: planted)");
    cmd->add_option("--class-m", c.class_m, "Class fan-in given to the learner (default: planted)");
    cmd->add_option("--tau", c.tau, "Parity learner threshold (default: opt-lb)");
    cmd->add_option("--max-t-max", c.max_t_max, "Guard on the derived iteration bound");
}

std::vector<uint64_t> parse_seeds(const Common &c) {
    if (c.seeds.empty()) {
        return {c.seed};
    }
    std::vector<uint64_t> out;
    auto dash = c.seeds.find('-');
    try {
        if (dash != std::string::npos) {
            uint64_t lo = std::stoull(c.seeds.substr(0, dash));
            uint64_t hi = std::stoull(c.seeds.substr(dash + 1));
            if (hi < lo) {
                throw ParameterError("empty seed range");
            }
            for (uint64_t s = lo; s <= hi; s++) {
                out.push_back(s);
            }
        } else {
            std::stringstream ss(c.seeds);
            std::string item;
            while (std::getline(ss, item, ',')) {
                out.push_back(std::stoull(item));
            }
        }
    } catch (const std::logic_error &) {
        throw ParameterError("cannot parse --seeds '" + c.seeds + "'");
    }
    return out;
}

ConceptParams planted_params(const Common &c) {
    ConceptParams p;
    p.n = c.n;
    p.size = c.size;
    p.k = c.k;
    p.width = c.width;
    p.m = c.m;
    return p;
}

MansourConstants mansour_of(const Common &c) {
    return MansourConstants{c.c1, c.c2};
}

/// Fills in defaults that make each learner runnable out of the box.
void default_planted(LearnerKind kind, Common &c) {
    switch (kind) {
        case LearnerKind::Parity:
            break;
        case LearnerKind::Dt:
            if (!c.size) c.size = 7;
            break;
        case LearnerKind::Junta:
        case LearnerKind::JuntaNoBoost:
            if (!c.k) c.k = 3;
            break;
        case LearnerKind::Dnf:
            if (!c.size) c.size = 2;
            if (!c.width) c.width = 2;
            break;
        case LearnerKind::Depth3:
            if (!c.size) c.size = 3;
            if (!c.width) c.width = 2;
            if (!c.m) c.m = 2;
            break;
    }
}

class Sink {
   public:
    explicit Sink(const std::string &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw Error("cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream &stream() {
        return file_ ? *file_ : std::cout;
    }
    bool to_file() const {
        return file_ != nullptr;
    }
    void finish() {
        stream().flush();
        if (!stream()) {
            throw Error("write failed");
        }
    }

   private:
    std::unique_ptr<std::ofstream> file_;
};

int run_learner(LearnerKind kind, Common &c) {
    default_planted(kind, c);
    ExperimentConfig cfg;
    cfg.learner = kind;
    cfg.planted = planted_params(c);
    cfg.class_size = c.class_size;
    cfg.class_k = c.class_k;
    cfg.class_m = c.class_m;
    cfg.opt_lb = c.opt_lb;
    cfg.eps = c.eps;
    cfg.delta = c.delta;
    cfg.tau = c.tau;
    cfg.mode = parse_mode(c.mode);
    cfg.seeds = parse_seeds(c);
    cfg.mansour = mansour_of(c);
    cfg.limits.max_t_max = c.max_t_max;
    cfg.validate();
    Sink sink(c.out);
    ExperimentSummary totals;
    run_experiment(cfg, &sink.stream(), sink.to_file() ? &std::cout : &std::cerr, &totals);
    sink.finish();
    return 0;
}

struct BoostArgs {
    std::string kind = "parity";
    std::string weak = "parity";
    std::string load_state;
    std::string dump_state;
};

int run_boost(Common &c, const BoostArgs &b) {
    check_accuracy(c.eps, c.delta);
    OracleMode mode = parse_mode(c.mode);
    StateVector psi;
    if (!b.load_state.empty()) {
        std::ifstream in(b.load_state, std::ios::binary);
        if (!in) {
            throw Error("cannot open '" + b.load_state + "'");
        }
        psi = load_state(in);
    } else {
        ConceptKind kind = parse_concept_kind(b.kind);
        ConceptParams p = planted_params(c);
        if (kind == ConceptKind::DecisionTree && !p.size) p.size = 7;
        if (kind == ConceptKind::Junta && !p.k) p.k = 3;
        if (kind == ConceptKind::Dnf && !p.size) p.size = 2;
        if (kind == ConceptKind::Dnf && !p.width) p.width = 2;
        BooleanConcept planted = random_concept(kind, p, c.seed);
        psi = make_corrupted_state(planted, c.opt_lb, c.seed ^ 0x5bd1e995ULL);
    }
    if (!b.dump_state.empty()) {
        std::ofstream dump(b.dump_state, std::ios::binary);
        save_state(dump, psi);
        if (!dump) {
            throw Error("cannot write '" + b.dump_state + "'");
        }
    }
    WeakLearner wal;
    if (b.weak == "parity") {
        wal = make_parity_weak_learner();
    } else if (b.weak == "dt") {
        wal = make_dt_weak_learner(c.class_size ? c.class_size : 7);
    } else {
        throw ParameterError("--weak must be parity or dt");
    }
    BoostingLimits limits;
    limits.max_t_max = c.max_t_max;
    CopySource src(psi, mode, c.seed);
    BoostResult r = agnostic_boost(src, wal, c.eps, c.delta, limits);
    nlohmann::json rec = r;
    rec["schema"] = RECORD_SCHEMA_VERSION;
    rec["version"] = VERSION_TAG;
    rec["achieved_fidelity"] = fidelity(r.decomposition.to_state(psi.num_qubits()), psi);
    Sink sink(c.out);
    sink.stream() << rec.dump() << '\n';
    sink.finish();
    return 0;
}

struct BondArgs {
    std::string kind = "hard-dnf";
    std::string concept_text;
};

int run_bonddim(Common &c, const BondArgs &b) {
    StateVector s;
    std::vector<BipartitionCut> cuts;
    std::vector<std::string> names;
    if (!b.concept_text.empty()) {
        BooleanConcept f = from_text(b.concept_text);
        s = phase_state_of(f, f.num_vars());
    } else if (b.kind == "hard-dnf") {
        int sz = c.size ? c.size : 2;
        BooleanConcept f = hard_dnf_instance(sz);
        s = phase_state_of(f, f.num_vars());
        cuts.push_back(BipartitionCut::contiguous(sz));
        names.push_back("x|y");
    } else {
        ConceptParams p = planted_params(c);
        BooleanConcept f = random_concept(parse_concept_kind(b.kind), p, c.seed);
        s = phase_state_of(f, f.num_vars());
    }
    for (int cut = 1; cut < s.num_qubits(); cut++) {
        cuts.push_back(BipartitionCut::contiguous(cut));
        names.push_back(std::to_string(cut));
    }
    Sink sink(c.out);
    sink.stream() << "cut,rank\n";
    for (std::size_t i = 0; i < cuts.size(); i++) {
        sink.stream() << names[i] << ',' << schmidt_rank(s, cuts[i]) << '\n';
    }
    sink.finish();
    return 0;
}

int run_discriminator(Common &c) {
    ConceptParams p = planted_params(c);
    if (!p.size) p.size = 3;
    if (!p.width) p.width = 2;
    if (!p.m) p.m = 2;
    auto seeds = parse_seeds(c);
    Sink sink(c.out);
    sink.stream() << "seed,m,best,constant,bound,holds,holds_with_constant\n";
    for (uint64_t seed : seeds) {
        BooleanConcept f = random_concept(ConceptKind::Tac, p, seed);
        std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> probs(p.n);
        for (auto &q : probs) {
            q = unit(rng);
        }
        DiscriminatorReport r = verify_discriminator(f, product_distribution(probs));
        sink.stream() << seed << ',' << std::get<ThresholdOfDnfs>(f.body()).dnfs.size() << ',' << r.best << ','
                      << r.constant << ',' << r.bound << ',' << r.holds << ',' << r.holds_with_constant << '\n';
    }
    sink.finish();
    return 0;
}

struct DistribArgs {
    std::string kind = "parity";
    double noise = 0.1;
    std::string learner = "parity";
};

int run_distrib(Common &c, const DistribArgs &d) {
    if (!(d.noise >= 0 && d.noise < 0.5)) {
        throw ParameterError("--noise must lie in [0, 0.5)");
    }
    check_accuracy(c.eps, c.delta);
    ConceptParams p = planted_params(c);
    ConceptKind kind = parse_concept_kind(d.kind);
    if (kind == ConceptKind::DecisionTree && !p.size) p.size = 7;
    if (kind == ConceptKind::Junta && !p.k) p.k = 3;
    BooleanConcept f = random_concept(kind, p, c.seed);
    std::vector<double> phi(std::size_t{1} << c.n);
    for (Mask x = 0; x < phi.size(); x++) {
        phi[x] = (1 - 2 * d.noise) * (f.evaluate(x) ? -1.0 : 1.0);
    }
    LabelFunction label(c.n, std::move(phi));
    double eps = c.eps;
    double delta = c.delta;
    int class_size = c.class_size ? c.class_size : 7;
    StateLearner learner;
    if (d.learner == "parity") {
        learner = [eps, delta](CopySource &src) {
            return agnostic_learn_parity(src, 0.5, std::min(eps, 0.5), delta).hypothesis;
        };
    } else if (d.learner == "dt") {
        learner = [eps, delta, class_size](CopySource &src) {
            return agnostic_learn_dt(src, class_size, eps, delta).hypothesis;
        };
    } else {
        throw ParameterError("--learner must be parity or dt");
    }
    DistributionalOptions opts;
    opts.mode = parse_mode(c.mode);
    opts.seed = c.seed;
    DistributionalOutcome r = distributional_learn(label, learner, eps, opts);
    auto truth = truth_table(f);
    nlohmann::json rec{
        {"schema", RECORD_SCHEMA_VERSION},
        {"version", VERSION_TAG},
        {"concept", to_text(f)},
        {"noise", d.noise},
        {"decomposition", r.decomposition},
        {"margin", r.margin},
        {"gamma", r.gamma},
        {"success_prob", r.success_prob},
        {"sign_flipped", r.sign_flipped},
        {"agreement", agreement(r.hypothesis, truth)},
        {"ledger", r.ledger},
    };
    Sink sink(c.out);
    sink.stream() << rec.dump() << '\n';
    sink.finish();
    return 0;
}

struct SpectrumArgs {
    std::string kind = "dt";
    std::string concept_text;
    std::string load_state;
};

int run_spectrum(Common &c, const SpectrumArgs &a) {
    std::vector<double> weights;
    std::vector<double> coeffs;
    int n = 0;
    if (!a.load_state.empty()) {
        std::ifstream in(a.load_state, std::ios::binary);
        if (!in) {
            throw Error("cannot open '" + a.load_state + "'");
        }
        StateVector s = walsh_hadamard(load_state(in));
        n = s.num_qubits();
        for (Mask x = 0; x < s.dim(); x++) {
            coeffs.push_back(s[x].real());
            weights.push_back(std::norm(s[x]));
        }
    } else {
        BooleanConcept f = a.concept_text.empty()
                               ? random_concept(parse_concept_kind(a.kind), planted_params(c), c.seed)
                               : from_text(a.concept_text);
        if (a.concept_text.empty() && !c.out.empty()) {
            std::cerr << to_text(f) << '\n';
        }
        FourierSpectrum spec = fourier_spectrum(f);
        n = spec.n;
        coeffs = spec.coeffs;
        for (double v : coeffs) {
            weights.push_back(v * v);
        }
    }
    Sink sink(c.out);
    sink.stream() << "label,coefficient,weight\n";
    for (Mask x = 0; x < coeffs.size(); x++) {
        if (weights[x] > 1e-14) {
            sink.stream() << ParityLabel{x}.str(n) << ',' << coeffs[x] << ',' << weights[x] << '\n';
        }
    }
    sink.finish();
    return 0;
}

struct CalibrateArgs {
    std::vector<double> overlaps{0, 0.25, 0.5, 0.75, 1};
    int trials = 1000;
};

int run_calibrate(Common &c, const CalibrateArgs &a) {
    check_accuracy(c.eps, c.delta);
    Sink sink(c.out);
    sink.stream() << "overlap_sq,eps,delta,trials,failure_rate\n";
    for (std::size_t i = 0; i < a.overlaps.size(); i++) {
        double rate = swap_failure_rate(a.overlaps[i], c.eps, c.delta, a.trials, c.seed + i, std::min(c.n, 8));
        sink.stream() << a.overlaps[i] << ',' << c.eps << ',' << c.delta << ',' << a.trials << ',' << rate << '\n';
    }
    sink.finish();
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Agnostic boosting of quantum phase states: experiment harness"};
    app.require_subcommand(1);
    std::function<int()> action;

    Common boost_c;
    BoostArgs boost_a;
    auto *boost = app.add_subcommand("boost", "Run agnostic boosting on a planted, corrupted state");
    add_common(boost, boost_c);
    boost->add_option("--kind", boost_a.kind, "Planted concept kind");
    boost->add_option("--weak", boost_a.weak, "Weak learner: parity or dt");
    boost->add_option("--load-state", boost_a.load_state, "Read the hidden state from a binary dump");
    boost->add_option("--dump-state", boost_a.dump_state, "Write the hidden state as a binary dump");
    boost->callback([&] { action = [&] { return run_boost(boost_c, boost_a); }; });

    Common learn_c;
    auto *learn = app.add_subcommand("learn", "Seeded runs of an agnostic learner");
    learn->require_subcommand(1);
    for (const char *name : {"parity", "dt", "junta", "junta-noboost", "dnf"}) {
        auto *sub = learn->add_subcommand(name, std::string("Agnostic ") + name + " learner");
        add_common(sub, learn_c);
        std::string learner = name;
        sub->callback([&, learner] { action = [&, learner] { return run_learner(parse_learner(learner), learn_c); }; });
    }

    Common pac_c;
    auto *pac = app.add_subcommand("pac", "PAC learning from phase states");
    pac->require_subcommand(1);
    auto *depth3 = pac->add_subcommand("depth3", "Threshold of DNFs");
    add_common(depth3, pac_c);
    depth3->callback([&] { action = [&] { return run_learner(LearnerKind::Depth3, pac_c); }; });

    Common bond_c;
    BondArgs bond_a;
    auto *bond = app.add_subcommand("bonddim", "Schmidt ranks across contiguous cuts (CSV)");
    add_common(bond, bond_c);
    bond->add_option("--kind", bond_a.kind, "hard-dnf or a concept kind");
    bond->add_option("--concept", bond_a.concept_text, "Concept in text form");
    bond->callback([&] { action = [&] { return run_bonddim(bond_c, bond_a); }; });

    Common disc_c;
    auto *disc = app.add_subcommand("discriminator", "Discriminator check on random threshold circuits (CSV)");
    add_common(disc, disc_c);
    disc->callback([&] { action = [&] { return run_discriminator(disc_c); }; });

    Common dist_c;
    DistribArgs dist_a;
    auto *dist = app.add_subcommand("distrib", "Distributional learning via post-selection");
    add_common(dist, dist_c);
    dist->add_option("--kind", dist_a.kind, "Planted concept kind");
    dist->add_option("--noise", dist_a.noise, "Label noise rate");
    dist->add_option("--learner", dist_a.learner, "parity or dt");
    dist->callback([&] { action = [&] { return run_distrib(dist_c, dist_a); }; });

    Common spec_c;
    SpectrumArgs spec_a;
    auto *spectrum = app.add_subcommand("spectrum", "Fourier spectrum of a concept or a dumped state (CSV)");
    add_common(spectrum, spec_c);
    spectrum->add_option("--kind", spec_a.kind, "Random concept kind");
    spectrum->add_option("--concept", spec_a.concept_text, "Concept in text form");
    spectrum->add_option("--load-state", spec_a.load_state, "Binary state dump");
    spectrum->callback([&] { action = [&] { return run_spectrum(spec_c, spec_a); }; });

    Common cal_c;
    CalibrateArgs cal_a;
    auto *calibrate = app.add_subcommand("calibrate", "Estimator calibration");
    calibrate->require_subcommand(1);
    auto *swap = calibrate->add_subcommand("swap", "SWAP-test failure rates (CSV)");
    add_common(swap, cal_c);
    cal_c.eps = 0.02;
    cal_c.delta = 0.01;
    swap->add_option("--overlaps", cal_a.overlaps, "True squared overlaps");
    swap->add_option("--trials", cal_a.trials, "Trials per overlap");
    swap->callback([&] { action = [&] { return run_calibrate(cal_c, cal_a); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action ? action() : 2;
    } catch (const ParameterError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
