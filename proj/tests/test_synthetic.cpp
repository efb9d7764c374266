#include "icrm/synthetic.hpp"

#include <catch_amalgamated.hpp>

#include <set>

TEST_CASE("pseudo-words survive pre-processing unchanged", "[synthetic]") {
    icrm::PseudoWordSource source(1);
    const auto words = source.take(500);
    const auto stop = icrm::StopwordList::smart();
    std::set<std::string> distinct(words.begin(), words.end());
    CHECK(distinct.size() == 500);
    for (const auto& w : words) {
        CHECK(w.size() == 6);
        CHECK(icrm::stem(w) == w);
        CHECK_FALSE(stop.contains(w));
    }
}

TEST_CASE("synthetic corpus shape", "[synthetic]") {
    icrm::SyntheticSpec spec;
    spec.messages_per_class = 30;
    const auto ds = icrm::make_synthetic_corpus(spec);
    REQUIRE(ds.ham.size() == 30);
    REQUIRE(ds.spam.size() == 30);
    CHECK(ds.ham[0].id == "ham-00000");
    CHECK(ds.spam[29].id == "spam-00029");
    CHECK(ds.ham[0].timestamp == icrm::Date{2000, 1, 1});
    CHECK(ds.ham[29].timestamp == icrm::Date{2000, 1, 30});
    for (const auto& m : ds.spam) CHECK(m.label == icrm::Label::spam);
}

TEST_CASE("disjoint vocabularies stay disjoint", "[synthetic]") {
    icrm::SyntheticSpec spec;
    spec.messages_per_class = 50;
    const auto vocab = icrm::synthetic_vocabulary(spec);
    const std::set<std::string> ham(vocab.ham.begin(), vocab.ham.end());
    const auto ds = icrm::make_synthetic_corpus(spec);
    for (const auto& m : ds.spam)
        for (const auto& f : icrm::preprocess(m, 1000).features) CHECK_FALSE(ham.contains(f));
    for (const auto& m : ds.ham)
        for (const auto& f : icrm::preprocess(m, 1000).features) CHECK(ham.contains(f));
}

TEST_CASE("generator is seeded", "[synthetic]") {
    icrm::SyntheticSpec spec;
    spec.messages_per_class = 20;
    spec.shared_vocabulary = 50;
    spec.shared_fraction = 0.3;
    const auto a = icrm::make_synthetic_corpus(spec);
    const auto b = icrm::make_synthetic_corpus(spec);
    CHECK(a.ham == b.ham);
    spec.seed = 8;
    CHECK(icrm::make_synthetic_corpus(spec).ham != a.ham);
}

TEST_CASE("calendar arithmetic", "[synthetic]") {
    CHECK(icrm::add_days({2000, 2, 28}, 1) == icrm::Date{2000, 2, 29});
    CHECK(icrm::add_days({1999, 12, 31}, 1) == icrm::Date{2000, 1, 1});
    CHECK(icrm::add_days({2001, 3, 1}, -1) == icrm::Date{2001, 2, 28});
}
