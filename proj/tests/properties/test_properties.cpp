// Randomised properties. Each case draws at least kInstances instances from a
// fixed seed so failures reproduce; CONCUR_SEED overrides the seed.
#include <doctest.h>

#include <cstdlib>

#include "concur/construct.hpp"
#include "concur/homology.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace concur;

namespace {

constexpr std::size_t kInstances = 250;

gen::Rng rng_for(std::uint64_t salt)
{
    std::uint64_t seed = 20240611;
    if (const char* s = std::getenv("CONCUR_SEED"))
        seed = std::strtoull(s, nullptr, 10);
    return gen::Rng(seed * 1000003 + salt);
}


// A valid system from either generator: grid ideals, or raw graphs that pass validation.
SystemDescription valid_system(gen::Rng& rng)
{
    if (gen::coin(rng, 0.6))
        return gen::grid_system(rng);
    for (;;) {
        auto d = gen::raw_system(rng);
        if (!validate_system(d).has("diamond"))
            return d;
    }
}

}  // namespace

TEST_CASE("boundary of a boundary is zero")
{
    auto rng = rng_for(1);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto k = gen::scheme(rng);
        auto top = k.dimension().value_or(0);
        for (std::size_t n = 1; n < top; ++n) {
            auto prod = boundary_matrix(k, n) * boundary_matrix(k, n + 1);
            CHECK(prod.is_zero());
        }
        ++checked;
    }
    CHECK(checked >= 200);
}

TEST_CASE("homology does not depend on the vertex order")
{
    auto rng = rng_for(2);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto k = gen::scheme(rng);
        auto renamed = gen::shuffled_names(rng, k);
        CHECK(homology(k) == homology(renamed));
    }
}

TEST_CASE("Euler characteristic from cells equals the one from Betti numbers")
{
    auto rng = rng_for(3);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto k = gen::scheme(rng);
        auto cx = chain_complex(k);
        long cells = 0;
        for (std::size_t n = 0; n < cx.cells.size(); ++n)
            cells += (n % 2 ? -1 : 1) * static_cast<long>(cx.cells[n]);
        auto h = homology(cx);
        long betti = 0;
        for (std::size_t n = 0; n < h.degrees().size(); ++n)
            betti += (n % 2 ? -1 : 1) * static_cast<long>(h.degrees()[n].betti);
        CHECK(cells == betti);
    }
}

TEST_CASE("Betti numbers agree with ranks over Q")
{
    auto rng = rng_for(4);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto k = gen::scheme(rng);
        auto h = homology(k);
        auto top = k.dimension().value_or(0);
        for (std::size_t n = 0; n <= top + 1; ++n) {
            std::size_t cells = ordered_simplices(k, n).size();
            std::size_t r_n = n == 0 ? 0 : oracle::rational_rank(boundary_matrix(k, n));
            std::size_t r_next = oracle::rational_rank(boundary_matrix(k, n + 1));
            CHECK(h.at(n).betti == cells - r_n - r_next);
        }
    }
}

TEST_CASE("Smith normal form: rank, divisibility, and modular ranks")
{
    auto rng = rng_for(5);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto m = gen::matrix(rng);
        auto f = smith_normal_form(m);
        CAPTURE(m);
        CHECK(f.diagonal.size() == std::min(m.rows(), m.cols()));
        CHECK(f.rank == oracle::rational_rank(m));
        for (std::size_t j = 0; j < f.diagonal.size(); ++j) {
            CHECK(f.diagonal[j] >= 0);
            CHECK((j < f.rank) == (f.diagonal[j] != 0));
            if (j + 1 < f.rank)
                CHECK(f.diagonal[j + 1] % f.diagonal[j] == 0);
        }
        for (long p : {2L, 3L, 5L}) {
            std::size_t divisible = 0;
            for (std::size_t j = 0; j < f.rank; ++j)
                if (f.diagonal[j] % p == 0)
                    ++divisible;
            CHECK(oracle::mod_p_rank(m, p) == f.rank - divisible);
        }
    }
}

TEST_CASE("Smith normal form matches determinantal divisors on small matrices")
{
    auto rng = rng_for(6);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto m = gen::matrix(rng, 4, 6);
        auto f = smith_normal_form(m);
        std::vector<BigInt> nonzero(f.diagonal.begin(), f.diagonal.begin() + f.rank);
        CAPTURE(m);
        CHECK(nonzero == oracle::invariant_factors(m));
    }
}

TEST_CASE("torsion of random schemes matches modular ranks")
{
    // dim H_n(F_p) = betti_n + t_p(n) + t_p(n-1), where t_p counts torsion factors divisible by p.
    auto rng = rng_for(7);
    std::vector<SimplicialScheme> pool;
    for (std::size_t i = 0; i < kInstances; ++i)
        pool.push_back(gen::scheme(rng));
    pool.push_back(fixture_scheme("rp2"));
    pool.push_back(fixture_scheme("wedge(rp2,sphere:2)"));
    for (const auto& k : pool) {
        auto h = homology(k);
        auto top = k.dimension().value_or(0);
        auto t = [&](std::size_t n) {
            std::size_t c = 0;
            for (const auto& x : h.at(n).torsion)
                if (x % 2 == 0)
                    ++c;
            return c;
        };
        for (std::size_t n = 0; n <= top; ++n) {
            std::size_t cells = ordered_simplices(k, n).size();
            std::size_t r_n = n == 0 ? 0 : oracle::mod_p_rank(boundary_matrix(k, n), 2);
            std::size_t r_next = oracle::mod_p_rank(boundary_matrix(k, n + 1), 2);
            CHECK(cells - r_n - r_next == h.at(n).betti + t(n) + (n ? t(n - 1) : 0));
        }
    }
}

TEST_CASE("barycentric subdivision preserves homology")
{
    auto rng = rng_for(8);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto k = gen::scheme(rng, 6, 3);
        CHECK(homology(barycentric_subdivision(k)) == homology(k));
    }
}

TEST_CASE("adjacent independent transpositions leave the action unchanged")
{
    auto rng = rng_for(9);
    std::size_t swaps = 0;
    std::size_t systems = 0;
    while (systems < kInstances) {
        auto d = valid_system(rng);
        AsyncSystem a(d);
        if (a.num_events() < 2 || a.independent_pairs().empty())
            continue;
        ++systems;
        for (int trial = 0; trial < 8; ++trial) {
            std::size_t s = gen::uniform(rng, 0, a.num_states() - 1);
            std::size_t len = gen::uniform(rng, 2, 5);
            std::vector<std::size_t> w(len);
            for (auto& e : w)
                e = gen::uniform(rng, 0, a.num_events() - 1);
            for (std::size_t i = 0; i + 1 < len; ++i) {
                if (!a.independent(w[i], w[i + 1]))
                    continue;
                auto v = w;
                std::swap(v[i], v[i + 1]);
                CHECK(act(a, s, w) == act(a, s, v));
                ++swaps;
            }
        }
    }
    CHECK(swaps >= 200);
}

TEST_CASE("every explored net is a valid asynchronous system")
{
    auto rng = rng_for(10);
    std::size_t explored = 0;
    std::size_t squares = 0;
    ExplorationLimits limits;
    limits.max_states = 200;
    limits.max_tokens = 6;
    while (explored < kInstances) {
        auto d = gen::net(rng);
        LabelledPetriNet net(PetriNet(d), gen::identity_labels(d.events));
        std::optional<NetSystem> ns;
        try {
            ns = async_of_net(net, limits);
        } catch (const LimitError&) {
            continue;
        }
        ++explored;
        const auto& a = ns->system.system();
        CHECK(validate_system(a).ok());
        CHECK(oracle::brute_markings(net.net(), 1000).size() == a.num_states());

        // Independent events commute arithmetically on every explored square.
        for (auto [i, j] : a.independent_pairs())
            for (std::size_t s = 0; s < a.num_states(); ++s) {
                auto si = a.step(s, i);
                auto sij = si ? a.step(*si, j) : std::nullopt;
                if (!sij)
                    continue;
                auto sj = a.step(s, j);
                REQUIRE(sj);
                CHECK(a.step(*sj, i) == sij);
                ++squares;
            }
    }
    CHECK(squares > 0);
}

TEST_CASE("firing conserves tokens and enabledness is monotone")
{
    auto rng = rng_for(11);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto d = gen::net(rng);
        PetriNet n(d);
        auto m = gen::marking(rng, n.num_places());
        auto bigger = m + gen::marking(rng, n.num_places());
        auto en = enabled(n, m);
        auto en_big = enabled(n, bigger);
        for (std::size_t e : en) {
            CHECK(std::find(en_big.begin(), en_big.end(), e) != en_big.end());
            auto after = fire(n, m, e);
            // M' + pre = M + post, place by place.
            CHECK(after + n.pre(e) == m + n.post(e));
        }
        for (std::size_t e = 0; e < n.num_events(); ++e)
            if (std::find(en.begin(), en.end(), e) == en.end())
                CHECK_THROWS_AS(fire(n, m, e), FiringError);
    }
}

TEST_CASE("Q_n enumeration agrees with brute force")
{
    auto rng = rng_for(12);
    for (std::size_t i = 0; i < kInstances; ++i) {
        AsyncSystem a(valid_system(rng));
        for (std::size_t n = 0; n <= std::min<std::size_t>(a.num_events(), 3); ++n) {
            auto q = enumerate_q(a, n);
            std::set<QTuple> got(q.begin(), q.end());
            CHECK(got.size() == q.size());
            CHECK(got == oracle::brute_q(a, n));
        }
    }
}

TEST_CASE("scheme of a system is the family of Q_k label sets")
{
    auto rng = rng_for(13);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto d = valid_system(rng);
        LabelledAsyncSystem la(AsyncSystem(d), gen::labels(rng, d.events));
        CHECK(oracle::simplex_names(scheme_of_system(la)) == oracle::brute_system_simplices(la));
    }
}

TEST_CASE("layers: witnesses replay and layers are exact")
{
    auto rng = rng_for(14);
    for (std::size_t i = 0; i < kInstances; ++i) {
        auto d = gen::coin(rng) ? valid_system(rng) : gen::raw_system(rng);
        AsyncSystem a(d);
        auto layers = reachable_layers(a, a.initial(), 6);
        std::set<std::size_t> frontier{a.initial()};
        for (std::size_t k = 0; k <= layers.max_len(); ++k) {
            auto states = layers.states_at(k);
            CHECK(std::set<std::size_t>(states.begin(), states.end()) == frontier);
            for (std::size_t s : states) {
                auto w = layers.witness(k, s);
                CHECK(w.size() == k);
                CHECK(act(a, a.initial(), w) == s);
                if (k <= 3 && a.num_events() > 0) {
                    // The witness is the lexicographically least word of its length.
                    std::size_t total = 1;
                    for (std::size_t j = 0; j < k; ++j)
                        total *= a.num_events();
                    for (std::size_t code = 0; code < total; ++code) {
                        std::vector<std::size_t> v(k);
                        for (std::size_t j = k, c = code; j-- > 0; c /= a.num_events())
                            v[j] = c % a.num_events();
                        if (act(a, a.initial(), v) == s) {
                            CHECK(v == w);
                            break;
                        }
                    }
                }
            }
            std::set<std::size_t> next;
            for (std::size_t s : frontier)
                for (std::size_t e = 0; e < a.num_events(); ++e)
                    if (auto t = a.step(s, e))
                        next.insert(*t);
            frontier = std::move(next);
        }
        auto reached = reachable_states(a, a.initial());
        auto brute = oracle::reachable(d, d.initial.str());
        CHECK(reached.size() == brute.size());
    }
}
