#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rsaudit/csv.hpp"
#include "rsaudit/error.hpp"

#include <filesystem>
#include <fstream>

using namespace rsaudit;

TEST_CASE("csv: quoting, escaped quotes, embedded newlines, CRLF and BOM") {
    std::istringstream in("\xEF\xBB\xBF" "a,b,c\r\n1,\"x,y\",\"he said \"\"hi\"\"\"\r\n\r\n2,\"two\nlines\",z\r\n");
    const auto t = csv::read(in);
    REQUIRE(t.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].fields[1] == "x,y");
    CHECK(t.rows[0].fields[2] == "he said \"hi\"");
    CHECK(t.rows[1].fields[1] == "two\nlines");
    CHECK(t.rows[1].line == 4);
}

TEST_CASE("csv: ragged rows are rejected with the line number") {
    std::istringstream in("a,b\n1,2\n3\n");
    try {
        (void)csv::read(in);
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("expected 2 fields, found 1") != std::string::npos);
    }
}

TEST_CASE("csv: unterminated quote") {
    std::istringstream in("a,b\n1,\"open\n");
    CHECK_THROWS_AS((void)csv::read(in), ParseError);
}

TEST_CASE("csv: quote() round-trips through read()") {
    const std::vector<std::string> fields{"plain", "com,ma", "qu\"ote", "new\nline", ""};
    std::ostringstream out;
    csv::write_row(out, {"h1", "h2", "h3", "h4", "h5"});
    csv::write_row(out, fields);
    std::istringstream in(out.str());
    const auto t = csv::read(in);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].fields == fields);
}

TEST_CASE("ingest: toy dataset shape") {
    const Dataset d = fixtures::toy();
    REQUIRE(d.size() == 8);
    CHECK(d.schema().size() == 2);
    CHECK(d.schema().attributes[0].name == "a");
    CHECK(d.schema().attributes[0].values == std::vector<std::string>{"x", "y"});
    CHECK(d.schema().split_column == std::optional<std::string>("split"));
    CHECK(d.count(Label::positive) == 4);
    CHECK(d.count(Label::negative) == 4);
    CHECK(d.has_splits());
    CHECK(d[0].id == "r1");
    CHECK(d[0].concepts == std::vector<ValueIndex>{0, 0});
    CHECK(d[7].concepts == std::vector<ValueIndex>{1, 1});
    CHECK(d[7].split == Split::test);
    CHECK(d.split(Split::valid).size() == 3);
    CHECK(validate(d).empty());
}

TEST_CASE("ingest: without a split column") {
    const Dataset d = fixtures::toy_unsplit();
    CHECK_FALSE(d.has_splits());
    CHECK_FALSE(d.schema().split_column.has_value());
    CHECK(d.schema().size() == 2);
}

TEST_CASE("label map: default melanoma mapping") {
    const LabelMap m = LabelMap::melanoma_default();
    CHECK(m.map("1") == Label::positive);
    CHECK(m.map("0") == Label::negative);
    CHECK(m.map("melanoma") == Label::positive);
    CHECK(m.map("melanoma (in situ)") == Label::positive);
    CHECK(m.map("melanoma metastasis") == Label::positive);
    CHECK(m.map("clark nevus") == Label::negative);
    CHECK(m.map("seborrheic keratosis") == Label::negative);
}

TEST_CASE("label map: first match wins, no fallback rejects") {
    IngestConfig cfg;
    cfg.label_map.rules = {{"mel*", Label::positive}, {"*", Label::negative}};
    cfg.label_map.fallback.reset();
    const Dataset d = fixtures::parse("id,c,label\n1,u,melanoma\n2,u,nevus\n", cfg);
    CHECK(d[0].label == Label::positive);
    CHECK(d[1].label == Label::negative);

    cfg.label_map.rules = {{"mel*", Label::positive}, {"nevus", Label::negative}};
    try {
        (void)fixtures::parse("id,c,label\n1,u,melanoma\n2,u,lentigo\n", cfg);
        FAIL("expected LabelMapError");
    } catch (const LabelMapError &e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("lentigo") != std::string::npos);
    }
}

TEST_CASE("ingest: schema errors") {
    CHECK_THROWS_AS((void)fixtures::parse("id,c\n1,u\n"), SchemaError);
    CHECK_THROWS_AS((void)fixtures::parse("id,c,c,label\n1,u,u,1\n"), SchemaError);
    CHECK_THROWS_AS((void)fixtures::parse("id,c,label,split\n1,u,1,holdout\n"), SchemaError);
    try {
        (void)fixtures::parse("id,c,label\n1,,1\n");
        FAIL("expected SchemaError");
    } catch (const SchemaError &e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("'c'") != std::string::npos);
    }
}

TEST_CASE("ingest: empty cells map to a configured category") {
    IngestConfig cfg;
    cfg.empty_as["c"] = "absent";
    const Dataset d = fixtures::parse("id,c,label\n1,,1\n2,present,0\n", cfg);
    CHECK(d.schema().attributes[0].values == std::vector<std::string>{"absent", "present"});
    CHECK(d[0].concepts[0] == 0);
}

TEST_CASE("ingest: declared domains keep their order and reject strays") {
    IngestConfig cfg;
    cfg.domains["c"] = {"typical", "atypical", "absent"};
    const Dataset d = fixtures::parse("id,c,label\n1,absent,1\n2,typical,0\n", cfg);
    CHECK(d.schema().attributes[0].values == cfg.domains["c"]);
    CHECK(d[0].concepts[0] == 2);
    CHECK(d[1].concepts[0] == 0);
    CHECK_THROWS_AS((void)fixtures::parse("id,c,label\n1,irregular,1\n", cfg), SchemaError);
}

TEST_CASE("ingest: config naming an unknown attribute is rejected") {
    IngestConfig cfg;
    cfg.default_values["nope"] = "absent";
    CHECK_THROWS_AS((void)fixtures::toy(cfg), SchemaError);
}

TEST_CASE("config: JSON parsing") {
    const IngestConfig cfg = parse_config(R"({
        "_comment": "ignored",
        "id_column": "case_num",
        "label_column": "diagnosis",
        "concept_columns": ["streaks"],
        "label_map": {"rules": [{"pattern": "melanoma*", "label": 1}], "default": "reject"},
        "attributes": {"streaks": {"values": ["absent", "regular"], "default": "absent"}}
    })");
    CHECK(cfg.id_column == "case_num");
    CHECK(cfg.label_column == "diagnosis");
    REQUIRE(cfg.concept_columns.has_value());
    CHECK(cfg.concept_columns->size() == 1);
    CHECK_FALSE(cfg.label_map.fallback.has_value());
    CHECK(cfg.default_values.at("streaks") == "absent");
    CHECK_THROWS_AS((void)parse_config(R"({"idcolumn": "x"})"), SchemaError);
    CHECK_THROWS_AS((void)parse_config("{not json"), SchemaError);
}

TEST_CASE("ingest: split index files") {
    const auto dir = std::filesystem::temp_directory_path() / "rsaudit_split_idx";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "train.csv") << "indexes\n0\n2\n";
        std::ofstream(dir / "test.csv") << "indexes\n1\n";
    }
    IngestConfig cfg;
    cfg.split_index_files[Split::train] = dir / "train.csv";
    cfg.split_index_files[Split::test] = dir / "test.csv";
    const Dataset d = fixtures::parse("id,c,label\n1,u,1\n2,u,0\n3,v,0\n", cfg);
    CHECK(d[0].split == Split::train);
    CHECK(d[1].split == Split::test);
    CHECK(d[2].split == Split::train);

    std::ofstream(dir / "test.csv") << "indexes\n0\n";
    CHECK_THROWS_AS((void)fixtures::parse("id,c,label\n1,u,1\n2,u,0\n3,v,0\n", cfg), SchemaError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("write_dataset reproduces the source layout") {
    const Dataset d = fixtures::toy();
    std::ostringstream out;
    write_dataset(d, out);
    CHECK(out.str() == fixtures::toy_csv);
    const Dataset again = fixtures::parse(out.str());
    CHECK(again == d);
}

TEST_CASE("write_dataset canonical layout for programmatic datasets") {
    ConceptSchema schema;
    schema.attributes.push_back({"c", {"u", "v"}, std::nullopt});
    std::vector<Record> records(2);
    records[0].id = "a";
    records[0].concepts = {1};
    records[0].label = Label::positive;
    records[1].id = "b";
    records[1].concepts = {0};
    const Dataset d(schema, records);
    std::ostringstream out;
    write_dataset(d, out);
    CHECK(out.str() == "id,c,label\na,v,1\nb,u,0\n");
    CHECK(fixtures::parse(out.str()) == d);
}

TEST_CASE("validate reports duplicate ids and out-of-domain values") {
    ConceptSchema schema;
    schema.attributes.push_back({"c", {"u"}, std::nullopt});
    std::vector<Record> records(3);
    records[0].id = "a";
    records[0].concepts = {0};
    records[1].id = "a";
    records[1].concepts = {0};
    records[2].id = "b";
    records[2].concepts = {4};
    const auto findings = validate(Dataset(schema, records));
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].kind == Finding::Kind::duplicate_id);
    CHECK(findings[1].kind == Finding::Kind::out_of_domain);
    CHECK(findings[1].row == 3);
}

TEST_CASE("require_nonempty") {
    CHECK_THROWS_AS(require_nonempty(Dataset{}, "audit"), ContractError);
    CHECK_NOTHROW(require_nonempty(fixtures::toy(), "audit"));
}

TEST_CASE("signature_text") {
    const Dataset d = fixtures::toy();
    CHECK(signature_text(d.schema(), d[6].concepts) == "y|q");
}
