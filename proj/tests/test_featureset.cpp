#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "editguard/corpus.hpp"
#include "editguard/featureset.hpp"
#include "editguard/lexicon.hpp"

using namespace editguard;
using namespace editguard::featureset;

namespace {

const std::filesystem::path kRepo = EDITGUARD_REPO_DIR;

const lexicon::LexiconSet& lexicons() {
    static const lexicon::LexiconSet set = lexicon::load_lexicons(kRepo / "data" / "lexicons");
    return set;
}

Edit make_edit(std::string old_text, std::string new_text) {
    Edit e;
    e.edit_id = "t1";
    e.editor = "Tester";
    e.comment = "test";
    e.old_text = std::move(old_text);
    e.new_text = std::move(new_text);
    e.article_title = "Page";
    return e;
}

}  // namespace

TEST_SUITE_BEGIN("featureset");

TEST_CASE("feature names and labels") {
    CHECK(feature_index("anonymous") == 0);
    CHECK(feature_index("longest_char_seq") == 13);
    CHECK(feature_index("all_frequency") == 14);
    CHECK(feature_index("good_impact") == 27);
    CHECK_THROWS_AS(feature_index("nope"), std::out_of_range);

    CHECK(label_name(Label::regular) == "regular");
    CHECK(label_name(Label::vandalism) == "vandalism");
    CHECK(parse_label("vandalism") == Label::vandalism);
    CHECK(parse_label("regular") == Label::regular);
    CHECK_FALSE(parse_label("spam").has_value());
}

TEST_CASE("identity edit is degenerate") {
    const ExtractionConfig config;
    Edit e = make_edit("Some stable text.", "Some stable text.");
    e.comment.clear();
    const FeatureVector v = extract(e, lexicons(), config);

    CHECK(v.at("anonymous") == 0.0);
    CHECK(v.at("comment_length") == 0.0);
    CHECK(v.at("size_increment") == 0.0);
    CHECK(v.at("size_ratio") == 1.0);
    CHECK(v.at("upper_to_lower") == 1.0);
    CHECK(v.at("upper_to_all") == 1.0);
    CHECK(v.at("digit_ratio") == 1.0);
    CHECK(v.at("nonalnum_ratio") == 1.0);
    CHECK(v.at("compressibility") == 1.0);
    CHECK(v.at("char_diversity") == 0.0);
    CHECK(v.at("char_distribution") == 0.0);
    CHECK(v.at("avg_term_freq") == 0.0);
    CHECK(v.at("longest_word") == 0.0);
    CHECK(v.at("longest_char_seq") == 0.0);
    CHECK_FALSE(v.truncated_diff);
    CHECK_FALSE(v.label.has_value());
    for (const auto& cat : lexicon::kCategories) {
        CHECK(v.at(std::string(cat) + "_frequency") == 0.0);
        CHECK(v.at(std::string(cat) + "_impact") == 1.0);
    }
}

TEST_CASE("shouting insertion") {
    const ExtractionConfig config;
    Edit e = make_edit("", "HEY HEY HEY!!!");
    e.is_anonymous = true;
    const FeatureVector v = extract(e, lexicons(), config);

    CHECK(v.at("anonymous") == 1.0);
    CHECK(v.at("comment_length") == 4.0);
    CHECK(v.at("upper_to_all") == 1.0);
    CHECK(v.at("upper_to_lower") == 10.0);
    // Count base is the space-joined token text "HEY HEY HEY ! ! !" (17 chars).
    CHECK(v.at("digit_ratio") == doctest::Approx(1.0 / 18.0));
    CHECK(v.at("nonalnum_ratio") == doctest::Approx(9.0 / 18.0));
    CHECK(v.at("longest_char_seq") == 3.0);
    CHECK(v.at("longest_word") == 3.0);
    CHECK(v.at("size_increment") == 14.0);
    CHECK(v.at("size_ratio") == 15.0);
    CHECK(v.at("vulgarism_frequency") == 0.0);
    // Distinct inserted tokens "hey" (3 of 6) and "!" (3 of 6), averaged.
    CHECK(v.at("avg_term_freq") == doctest::Approx(0.5));
}

TEST_CASE("extract is pure") {
    const ExtractionConfig config;
    const Edit e = make_edit("alpha beta gamma", "alpha beta delta gamma fuck");
    const FeatureVector a = extract(e, lexicons(), config);
    const FeatureVector b = extract(e, lexicons(), config);
    CHECK(a.values == b.values);  // bit-identical, not approximately equal
    CHECK(a.at("vulgarism_frequency") > 0.0);
}

TEST_CASE("frequencies stay within [0,1] and all dominates") {
    const ExtractionConfig config;
    const Edit e = make_edit("start", "start fuck you stupid sex page you wanna");
    const FeatureVector v = extract(e, lexicons(), config);
    for (const auto& cat : lexicon::kCategories) {
        const double f = v.at(std::string(cat) + "_frequency");
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        if (cat != "all") CHECK(v.at("all_frequency") >= f);
    }
    CHECK(v.at("vulgarism_frequency") > 0.0);
    CHECK(v.at("sex_frequency") > 0.0);
    CHECK(v.at("pronoun_frequency") > 0.0);
}

TEST_CASE("minicorpus vandalism edit") {
    const corpus::CorpusIndex index =
        corpus::load_corpus(kRepo / "tests" / "data" / "minicorpus");
    const ExtractionConfig config;
    const Edit& e13 = index.edits[index.by_id.at("13")];
    FeatureVector v = extract(e13, lexicons(), config);

    CHECK(v.at("anonymous") == 1.0);
    CHECK(v.at("size_increment") == 22.0);
    CHECK(v.at("vulgarism_frequency") > 0.0);
    CHECK(v.at("all_frequency") >= v.at("vulgarism_frequency"));
    CHECK(v.at("vulgarism_impact") > 1.0);  // vulgarity added, none before

    BatchResult batch = extract_batch(index.edits, lexicons(), config, 1);
    REQUIRE(batch.vectors.size() == index.edits.size());
    CHECK(batch.errors.empty());
    corpus::attach_labels(index, batch.vectors);
    CHECK(batch.vectors[index.by_id.at("13")].label == Label::vandalism);
    CHECK(batch.vectors[index.by_id.at("1")].label == Label::regular);
}

TEST_CASE("batch equals serial for any job count") {
    const corpus::CorpusIndex index =
        corpus::load_corpus(kRepo / "tests" / "data" / "minicorpus");
    const ExtractionConfig config;
    const BatchResult serial = extract_batch_serial(index.edits, lexicons(), config);
    REQUIRE(serial.vectors.size() == index.edits.size());
    for (int jobs : {1, 2, 4}) {
        const BatchResult par = extract_batch(index.edits, lexicons(), config, jobs);
        REQUIRE(par.vectors.size() == serial.vectors.size());
        CHECK(par.errors == serial.errors);
        for (size_t i = 0; i < serial.vectors.size(); ++i) {
            CHECK(par.vectors[i].values == serial.vectors[i].values);
            CHECK(par.vectors[i].truncated_diff == serial.vectors[i].truncated_diff);
        }
    }
    // Batch is the map of extract over the edits.
    for (size_t i = 0; i < index.edits.size(); ++i) {
        const FeatureVector one = extract(index.edits[i], lexicons(), config);
        CHECK(serial.vectors[i].values == one.values);
    }
}

TEST_CASE("csv round trip") {
    const corpus::CorpusIndex index =
        corpus::load_corpus(kRepo / "tests" / "data" / "minicorpus");
    const ExtractionConfig config;
    BatchResult batch = extract_batch_serial(index.edits, lexicons(), config);
    corpus::attach_labels(index, batch.vectors);

    std::ostringstream out;
    write_csv(out, batch.vectors);
    const std::string text = out.str();

    // Header is the canonical order plus the label column.
    std::string header;
    for (const auto& name : kFeatureNames) {
        header += std::string(name);
        header += ',';
    }
    header += "label";
    CHECK(text.substr(0, header.size()) == header);

    const FeatureTable table = read_csv(text);
    CHECK(table.has_labels);
    REQUIRE(table.vectors.size() == batch.vectors.size());
    for (size_t i = 0; i < batch.vectors.size(); ++i) {
        CHECK(table.vectors[i].values == batch.vectors[i].values);  // exact
        CHECK(table.vectors[i].label == batch.vectors[i].label);
    }

    SUBCASE("unlabeled rows survive") {
        std::vector<FeatureVector> mixed = batch.vectors;
        mixed[3].label.reset();
        std::ostringstream out2;
        write_csv(out2, mixed);
        const FeatureTable back = read_csv(out2.str());
        CHECK(back.has_labels);
        CHECK_FALSE(back.vectors[3].label.has_value());
        CHECK(back.vectors[4].label.has_value());
    }
}

TEST_CASE("csv parse errors") {
    CHECK_THROWS_WITH_AS(read_csv("bogus,header\n1,2\n"),
                         doctest::Contains("feature columns"), std::runtime_error);

    std::string header;
    for (const auto& name : kFeatureNames) {
        header += std::string(name);
        header += ',';
    }
    header += "label";

    CHECK_THROWS_WITH_AS(read_csv(header + "\n1,2,3\n"), doctest::Contains("line 2"),
                         std::runtime_error);

    std::string bad_number = header + "\n";
    for (size_t i = 0; i < kFeatureCount; ++i) bad_number += "x,";
    bad_number += "regular\n";
    CHECK_THROWS_WITH_AS(read_csv(bad_number), doctest::Contains("line 2"),
                         std::runtime_error);

    std::string bad_label = header + "\n";
    for (size_t i = 0; i < kFeatureCount; ++i) bad_label += "0,";
    bad_label += "maybe\n";
    CHECK_THROWS_WITH_AS(read_csv(bad_label), doctest::Contains("line 2"),
                         std::runtime_error);
}

TEST_CASE("arff output") {
    const ExtractionConfig config;
    FeatureVector labeled = extract(make_edit("", "hello"), lexicons(), config);
    labeled.label = Label::vandalism;
    FeatureVector unlabeled = extract(make_edit("", "other"), lexicons(), config);

    std::ostringstream out;
    write_arff(out, {labeled, unlabeled}, "edits");
    const std::string text = out.str();

    CHECK(text.find("@relation edits") != std::string::npos);
    CHECK(text.find("@attribute anonymous numeric") != std::string::npos);
    CHECK(text.find("@attribute class {regular,vandalism}") != std::string::npos);
    CHECK(text.find("@data") != std::string::npos);
    CHECK(text.find(",vandalism\n") != std::string::npos);
    CHECK(text.find(",?\n") != std::string::npos);
    // One @attribute per feature plus the class attribute.
    size_t attrs = 0;
    for (size_t pos = 0; (pos = text.find("@attribute", pos)) != std::string::npos; ++pos)
        ++attrs;
    CHECK(attrs == kFeatureCount + 1);
}

TEST_CASE("oversized diffs are truncated on character boundaries") {
    ExtractionConfig config;
    config.max_diff_bytes = 10;

    // Byte 10 falls inside the 4-byte emoji; the cut must back up to byte 8.
    const std::string emoji = "\xf0\x9f\x98\x80";
    Edit e = make_edit("", "abcdefgh" + emoji + "tail chars beyond");
    const FeatureVector v = extract(e, lexicons(), config);
    CHECK(v.truncated_diff);
    // Size features always use the full texts and count scalar values: the
    // emoji is one character, so 8 + 1 + 17 rather than the 29 bytes.
    CHECK(v.at("size_increment") == 26.0);

    ExtractionConfig roomy;
    const FeatureVector full = extract(e, lexicons(), roomy);
    CHECK_FALSE(full.truncated_diff);
    CHECK(full.at("size_increment") == v.at("size_increment"));
}

TEST_SUITE_END();
