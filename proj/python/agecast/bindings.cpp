#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "agecast/analysis.hpp"
#include "agecast/config.hpp"
#include "agecast/sim.hpp"
#include "agecast/sweep.hpp"

namespace py = pybind11;
using namespace agecast;

PYBIND11_MODULE(_core, m) {
  m.doc() = "age-of-information toolkit for the two-user broadcast erasure "
            "channel with XOR coding";

  py::class_<SplitMix64>(m, "SplitMix64")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("next", &SplitMix64::next)
      .def("next_double", &SplitMix64::next_double);
  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("stream"));

  py::class_<ErasurePair>(m, "ErasurePair")
      .def(py::init<bool, bool>(), py::arg("z1") = true, py::arg("z2") = true)
      .def_readwrite("z1", &ErasurePair::z1)
      .def_readwrite("z2", &ErasurePair::z2)
      .def("__repr__", [](const ErasurePair& z) {
        return "ErasurePair(z1=" + std::to_string(z.z1) +
               ", z2=" + std::to_string(z.z2) + ")";
      });

  py::class_<ChannelParams>(m, "ChannelParams")
      .def_static("validated", &ChannelParams::validated, py::arg("eps1"),
                  py::arg("eps2"), py::arg("eps12"))
      .def_property_readonly("eps1", &ChannelParams::eps1)
      .def_property_readonly("eps2", &ChannelParams::eps2)
      .def_property_readonly("eps12", &ChannelParams::eps12)
      .def("has_joint_law", &ChannelParams::has_joint_law)
      .def("p00", &ChannelParams::p00)
      .def("p01", &ChannelParams::p01)
      .def("p10", &ChannelParams::p10)
      .def("p11", &ChannelParams::p11);
  m.def("validate_params", &validate_params, py::arg("eps1"), py::arg("eps2"),
        py::arg("eps12"));
  m.def("sample_erasures", &sample_erasures);
  m.def("sample_erasures_uncoded_slot", &sample_erasures_uncoded_slot);
  m.def("sample_erasures_coded_slot", &sample_erasures_coded_slot);

  py::enum_<Action>(m, "Action")
      .value("USER1", Action::kUser1)
      .value("USER2", Action::kUser2)
      .value("XOR", Action::kXor);

  py::class_<AoiState>(m, "AoiState")
      .def(py::init<std::int64_t, std::int64_t, std::int64_t, std::int64_t>(),
           py::arg("h1") = 1, py::arg("h2") = 1, py::arg("w1") = 0,
           py::arg("w2") = 0)
      .def_readwrite("h1", &AoiState::h1)
      .def_readwrite("h2", &AoiState::h2)
      .def_readwrite("w1", &AoiState::w1)
      .def_readwrite("w2", &AoiState::w2)
      .def("__eq__", [](const AoiState& a, const AoiState& b) { return a == b; })
      .def("__repr__", [](const AoiState& s) {
        return "AoiState(h1=" + std::to_string(s.h1) +
               ", h2=" + std::to_string(s.h2) + ", w1=" + std::to_string(s.w1) +
               ", w2=" + std::to_string(s.w2) + ")";
      });
  m.def("satisfies_invariants", &satisfies_invariants);

  py::class_<AgeWeights>(m, "AgeWeights")
      .def(py::init<double, double>(), py::arg("alpha1") = 0.5,
           py::arg("alpha2") = 0.5)
      .def_readwrite("alpha1", &AgeWeights::alpha1)
      .def_readwrite("alpha2", &AgeWeights::alpha2);
  m.def("validate_weights", &validate_weights);

  m.def("step", &step, py::arg("state"), py::arg("action"),
        py::arg("erasures"));
  m.def("replay", [](const AoiState& init, const std::vector<Action>& actions,
                     const std::vector<ErasurePair>& erasures) {
    return replay(init, actions, erasures);
  });
  m.def("ewsaoi_accumulate",
        [](const std::vector<std::array<std::int64_t, 2>>& traj,
           const AgeWeights& w) { return ewsaoi_accumulate(traj, w); });

  py::class_<RenewalStats>(m, "RenewalStats")
      .def_readonly("deliveries", &RenewalStats::deliveries)
      .def_readonly("inter_delivery", &RenewalStats::inter_delivery)
      .def_readonly("age_at_delivery", &RenewalStats::age_at_delivery)
      .def_readonly("interval_age_sum", &RenewalStats::interval_age_sum)
      .def_readonly("residual", &RenewalStats::residual);
  m.def("renewal_decompose",
        [](const std::vector<std::int64_t>& times,
           const std::vector<std::int64_t>& ages, std::int64_t horizon,
           std::int64_t initial_age) {
          return renewal_decompose(times, ages, horizon, initial_age);
        },
        py::arg("delivery_times"), py::arg("ages"), py::arg("horizon"),
        py::arg("initial_age") = 1);

  py::class_<ActionWeights>(m, "ActionWeights")
      .def(py::init<double, double, double>(), py::arg("mu1") = 1.0 / 3,
           py::arg("mu2") = 1.0 / 3, py::arg("mu3") = 1.0 / 3)
      .def_readwrite("mu1", &ActionWeights::mu1)
      .def_readwrite("mu2", &ActionWeights::mu2)
      .def_readwrite("mu3", &ActionWeights::mu3);
  m.def("validate_action_weights", &validate_action_weights);
  m.def("uncoded_action_weights",
        py::overload_cast<const ActionWeights&>(&uncoded_variant));
  m.def("randomized_choose", &randomized_choose);

  py::class_<MwWeightTriple>(m, "MwWeightTriple")
      .def_readonly("w_action1", &MwWeightTriple::w_action1)
      .def_readonly("w_action2", &MwWeightTriple::w_action2)
      .def_readonly("w_action3", &MwWeightTriple::w_action3);
  m.def("mw_weights", &mw_weights);
  m.def("mw_choose", &mw_choose);
  m.def("mw_choose_uncoded", &mw_choose_uncoded);

  py::enum_<PolicyKind>(m, "PolicyKind")
      .value("RANDOMIZED", PolicyKind::kRandomized)
      .value("MAX_WEIGHT", PolicyKind::kMaxWeight);
  py::class_<PolicySpec>(m, "PolicySpec")
      .def(py::init([](PolicyKind kind, bool coded, ActionWeights mu) {
             return PolicySpec{kind, coded, mu};
           }),
           py::arg("kind") = PolicyKind::kRandomized, py::arg("coded") = true,
           py::arg("mu") = ActionWeights{})
      .def_readwrite("kind", &PolicySpec::kind)
      .def_readwrite("coded", &PolicySpec::coded)
      .def_readwrite("mu", &PolicySpec::mu);
  m.def("uncoded_policy",
        py::overload_cast<const PolicySpec&>(&uncoded_variant));

  m.def("lower_bound", &lower_bound);
  m.def("capacity_region_contains", &capacity_region_contains);

  py::class_<InterDeliveryParams>(m, "InterDeliveryParams")
      .def_readonly("x1", &InterDeliveryParams::x1)
      .def_readonly("y1", &InterDeliveryParams::y1)
      .def_readonly("z1", &InterDeliveryParams::z1)
      .def_readonly("delta1", &InterDeliveryParams::delta1)
      .def_readonly("beta1", &InterDeliveryParams::beta1);
  m.def("interdelivery_params", &interdelivery_params, py::arg("mu"),
        py::arg("params"), py::arg("user") = 1);
  m.def("inter_delivery_pmf", &inter_delivery_pmf);
  m.def("inter_delivery_moments", [](const InterDeliveryParams& p) {
    const Moments mo = inter_delivery_moments(p);
    return py::make_tuple(mo.mean, mo.second_moment);
  });
  m.def("delivery_probability", &delivery_probability, py::arg("mu"),
        py::arg("params"), py::arg("user") = 1);
  m.def("delivery_age_pmf", &delivery_age_pmf, py::arg("mu"),
        py::arg("params"), py::arg("d"), py::arg("user") = 1);
  m.def("expected_delivery_age", &expected_delivery_age, py::arg("mu"),
        py::arg("params"), py::arg("user") = 1);
  m.def("randomized_ewsaoi", &randomized_ewsaoi);
  m.def("randomized_ewsaoi_assembled", &randomized_ewsaoi_assembled);
  m.def("symmetric_ewsaoi", &symmetric_ewsaoi);
  m.def("optimal_mu_symmetric", &optimal_mu_symmetric);
  m.def("coding_beneficial", &coding_beneficial);

  py::class_<OptimizeResult>(m, "OptimizeResult")
      .def_readonly("mu", &OptimizeResult::mu)
      .def_readonly("value", &OptimizeResult::value);
  m.def("optimize_randomized", &optimize_randomized, py::arg("alphas"),
        py::arg("params"), py::arg("tolerance") = 1e-6,
        py::arg("coded") = true);
  m.def("empty_queue_prob", &empty_queue_prob);
  m.def("q2_nonempty_prob", &q2_nonempty_prob, py::arg("mu"),
        py::arg("eps_i"), py::arg("eps12"), py::arg("user") = 1);

  py::class_<MwBoundTerms>(m, "MwBoundTerms")
      .def_readonly("phi", &MwBoundTerms::phi)
      .def_readonly("psi", &MwBoundTerms::psi)
      .def_readonly("p_ne", &MwBoundTerms::p_ne);
  m.def("mw_bound_terms", &mw_bound_terms, py::arg("mu"), py::arg("params"),
        py::arg("user") = 1);
  m.def("mw_upper_bound", &mw_upper_bound);
  m.def("minimize_mw_upper_bound", &minimize_mw_upper_bound,
        py::arg("alphas"), py::arg("params"), py::arg("tolerance") = 1e-6);
  m.def("one_slot_drift", &one_slot_drift);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init([](PolicySpec policy, ChannelParams channel,
                       AgeWeights alphas, std::int64_t horizon,
                       int replications, std::uint64_t base_seed,
                       AoiState initial_state, bool collect_samples) {
             return SimConfig{policy,       channel,  alphas,
                              horizon,      replications, base_seed,
                              initial_state, collect_samples};
           }),
           py::arg("policy"), py::arg("channel"),
           py::arg("alphas") = AgeWeights{0.5, 0.5},
           py::arg("horizon") = 1'000'000, py::arg("replications") = 20,
           py::arg("base_seed") = 1, py::arg("initial_state") = AoiState{},
           py::arg("collect_samples") = false)
      .def_readwrite("policy", &SimConfig::policy)
      .def_readwrite("alphas", &SimConfig::alphas)
      .def_readwrite("horizon", &SimConfig::horizon)
      .def_readwrite("replications", &SimConfig::replications)
      .def_readwrite("base_seed", &SimConfig::base_seed)
      .def_readwrite("initial_state", &SimConfig::initial_state)
      .def_readwrite("collect_samples", &SimConfig::collect_samples);

  py::class_<UserStats>(m, "UserStats")
      .def_readonly("deliveries", &UserStats::deliveries)
      .def_readonly("throughput", &UserStats::throughput)
      .def_readonly("age_sum", &UserStats::age_sum)
      .def_readonly("interdelivery_mean", &UserStats::interdelivery_mean)
      .def_readonly("interdelivery_second_moment",
                    &UserStats::interdelivery_second_moment)
      .def_readonly("mean_age_at_delivery", &UserStats::mean_age_at_delivery)
      .def_readonly("q2_empty_fraction", &UserStats::q2_empty_fraction)
      .def_readonly("residual", &UserStats::residual)
      .def_readonly("last_age_at_delivery", &UserStats::last_age_at_delivery)
      .def_readonly("delivery_times", &UserStats::delivery_times)
      .def_readonly("inter_delivery_samples",
                    &UserStats::inter_delivery_samples)
      .def_readonly("age_at_delivery_samples",
                    &UserStats::age_at_delivery_samples);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("ewsaoi", &SimResult::ewsaoi)
      .def_readonly("horizon", &SimResult::horizon)
      .def_readonly("action_counts", &SimResult::action_counts)
      .def_readonly("user", &SimResult::user);
  m.def("run_simulation", &run_simulation, py::arg("config"), py::arg("seed"));

  py::class_<ReplicateResult>(m, "ReplicateResult")
      .def_readonly("mean", &ReplicateResult::mean)
      .def_readonly("ci_halfwidth", &ReplicateResult::ci_halfwidth)
      .def_readonly("std_error", &ReplicateResult::std_error)
      .def_readonly("replicates", &ReplicateResult::replicates);
  m.def("replicate", &replicate, py::arg("config"), py::arg("threads") = 0);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("alphas", &SweepConfig::alphas)
      .def_readwrite("eps_begin", &SweepConfig::eps_begin)
      .def_readwrite("eps_end", &SweepConfig::eps_end)
      .def_readwrite("eps_step", &SweepConfig::eps_step)
      .def_readwrite("horizon", &SweepConfig::horizon)
      .def_readwrite("replications", &SweepConfig::replications)
      .def_readwrite("base_seed", &SweepConfig::base_seed)
      .def_readwrite("threads", &SweepConfig::threads);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("epsilon", &SweepRow::epsilon)
      .def_readonly("eps12", &SweepRow::eps12)
      .def_readonly("lower_bound", &SweepRow::lower_bound)
      .def_readonly("coded_rand", &SweepRow::coded_rand)
      .def_readonly("uncoded_rand", &SweepRow::uncoded_rand)
      .def_readonly("coded_mw_mean", &SweepRow::coded_mw_mean)
      .def_readonly("coded_mw_ci", &SweepRow::coded_mw_ci)
      .def_readonly("uncoded_mw_mean", &SweepRow::uncoded_mw_mean)
      .def_readonly("uncoded_mw_ci", &SweepRow::uncoded_mw_ci)
      .def_readonly("mw_bound", &SweepRow::mw_bound);
  m.def("run_sweep", &run_sweep);
  m.def("write_sweep_csv", [](const std::filesystem::path& p,
                              const std::vector<SweepRow>& rows) {
    write_sweep_csv(p, rows);
  });

  py::class_<Moments>(m, "Moments")
      .def_readonly("mean", &Moments::mean)
      .def_readonly("second_moment", &Moments::second_moment);
}
