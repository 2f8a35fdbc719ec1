#include <doctest.h>

#include <json.hpp>

#include "cyclotrace/audit.hpp"

using namespace cyclo;

TEST_SUITE("audit") {

TEST_CASE("empty report") {
    audit_report rep;
    auto s = rep.summarize();
    CHECK(s.pass == 0);
    CHECK(s.fail == 0);
    CHECK(s.report_only == 0);
    CHECK(rep.strict_ok());
    CHECK(rep.render("json").empty());
}

TEST_CASE("duplicate entries are rejected") {
    audit_report rep;
    rep.check("gamma.closed_form", "a", "p=5", "x", "x", true);
    CHECK_THROWS_AS(rep.check("gamma.closed_form", "a", "p=5", "x", "x", true), duplicate_entry);
    CHECK_NOTHROW(rep.check("gamma.closed_form", "a", "p=7", "x", "x", true));
}

TEST_CASE("verdict follows the registered mode") {
    audit_report rep;
    rep.check("gamma.closed_form", "a", "p=5", "v", "v", true);       // asserted, match
    rep.check("prop47.leading", "a", "p=5", "v", "w", false);         // asserted, mismatch
    rep.check("prop57.spectrum_literal", "a", "p=5", "v", "w", false);  // report-only
    auto s = rep.summarize();
    CHECK(s.pass == 1);
    CHECK(s.fail == 1);
    CHECK(s.report_only == 1);
    CHECK_FALSE(rep.strict_ok());

    audit_report rep2;
    rep2.check("prop57.spectrum_literal", "a", "p=5", "v", "w", false);
    CHECK(rep2.strict_ok());  // report-only mismatches never fail a strict run
}

TEST_CASE("registered modes") {
    CHECK(registered_mode("gamma.closed_form") == claim_mode::assert_claim);
    CHECK(registered_mode("thm58.dimv_ge_rp") == claim_mode::assert_claim);
    CHECK(registered_mode("prop57.sum_alpha") == claim_mode::report_only_claim);
    CHECK(registered_mode("prop52.literal") == claim_mode::report_only_claim);
    CHECK(registered_mode("scan.max_zeros") == claim_mode::report_only_claim);
    CHECK(registered_mode("scholie.small_p") == claim_mode::report_only_claim);
    CHECK(registered_mode("made.up.claim") == claim_mode::report_only_claim);
}

TEST_CASE("json rendering round-trips and is order independent") {
    audit_report a, b;
    audit_entry e1{"c.one", "§x \"quote\"", "p=5", "1", "1", verdict::pass, "note, with comma"};
    audit_entry e2{"c.two", "anchor", "p=7", "2", "3", verdict::report_only, ""};
    a.file(e1);
    a.file(e2);
    b.file(e2);
    b.file(e1);
    CHECK(a.render("json") == b.render("json"));
    CHECK(a.render("text") == b.render("text"));

    std::istringstream is(a.render("json"));
    std::string line;
    std::vector<nlohmann::json> parsed;
    while (std::getline(is, line)) parsed.push_back(nlohmann::json::parse(line));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["claim_id"] == "c.one");
    CHECK(parsed[0]["paper_anchor"] == "§x \"quote\"");
    CHECK(parsed[0]["inputs"] == "p=5");
    CHECK(parsed[0]["paper_value"] == "1");
    CHECK(parsed[0]["computed_value"] == "1");
    CHECK(parsed[0]["verdict"] == "PASS");
    CHECK(parsed[0]["notes"] == "note, with comma");
    CHECK(parsed[1]["verdict"] == "REPORT_ONLY");

    CHECK_THROWS_AS(a.render("xml"), bad_input);
}

TEST_CASE("merge keeps deduplication") {
    audit_report a, b;
    a.check("c.one", "x", "p=5", "1", "1", true);
    b.check("c.one", "x", "p=7", "1", "1", true);
    a.merge(std::move(b));
    CHECK(a.summarize().total() == 2);
    audit_report c;
    c.check("c.one", "x", "p=5", "1", "1", true);
    CHECK_THROWS_AS(a.merge(std::move(c)), duplicate_entry);
}

} // TEST_SUITE
