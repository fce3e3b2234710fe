#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "conceptrealm/porter.hpp"
#include "conceptrealm/rng.hpp"
#include "conceptrealm/text.hpp"

using namespace conceptrealm;

TEST_CASE("tokenize basic cases") {
  CHECK(tokenize("Fix NullPointerException in parser!") ==
        std::vector<std::string>{"fix", "nullpointerexception", "in", "parser"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("v2.0 http://x.io bug") == std::vector<std::string>{"bug"});
}

TEST_CASE("tokenize strips urls and code fences") {
  CHECK(tokenize("see https://example.com/path?q=1 for details") ==
        std::vector<std::string>{"see", "for", "details"});
  CHECK(tokenize("WWW.EXAMPLE.ORG rest") == std::vector<std::string>{"rest"});
  CHECK(tokenize("before ```int main() { return 0; }``` after") ==
        std::vector<std::string>{"before", "after"});
  CHECK(tokenize("unclosed ```code goes on") == std::vector<std::string>{"unclosed"});
}

TEST_CASE("tokenize drops short tokens and digits") {
  CHECK(tokenize("a bb c3d e") == std::vector<std::string>{"bb"});
  CHECK(tokenize("x86_64 and ARM64") == std::vector<std::string>{"and", "arm"});
  CHECK(tokenize("don't stop") == std::vector<std::string>{"don", "stop"});
}

TEST_CASE("tokenize handles latin-1 letters") {
  // U+00DC LATIN CAPITAL LETTER U WITH DIAERESIS folds to u+00FC
  CHECK(tokenize("\xC3\x9C" "ber") == std::vector<std::string>{"\xC3\xBC" "ber"});
  CHECK(tokenize("caf\xC3\xA9") == std::vector<std::string>{"caf\xC3\xA9"});
  // multiplication sign is a separator
  CHECK(tokenize("ab\xC3\x97" "cd") == std::vector<std::string>{"ab", "cd"});
}

TEST_CASE("token hygiene holds on arbitrary input") {
  SplitMix64 rng(4242);
  for (int round = 0; round < 300; ++round) {
    std::string text;
    for (int i = 0; i < 80; ++i) text.push_back(static_cast<char>(rng.next() % 256));
    for (const auto& token : tokenize(text)) {
      int chars = 0;
      for (std::size_t i = 0; i < token.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(token[i]);
        bool ascii_letter = c >= 'a' && c <= 'z';
        bool latin1_lead = c == 0xC3;
        CHECK((ascii_letter || latin1_lead));
        if (latin1_lead) ++i;
        ++chars;
      }
      CHECK(chars >= 2);
    }
  }
}

TEST_CASE("remove_stopwords preserves order") {
  StopwordSet stop = {"the"};
  CHECK(remove_stopwords({"fix", "the", "bug"}, stop) == std::vector<std::string>{"fix", "bug"});
  CHECK(remove_stopwords({}, stop).empty());
  CHECK(remove_stopwords({"the", "the"}, stop).empty());
}

TEST_CASE("default stopword list") {
  const auto& stop = default_stopwords();
  CHECK(stop.contains("the"));
  CHECK(stop.contains("is"));
  CHECK(stop.contains("with"));
  CHECK_FALSE(stop.contains("parser"));
}

TEST_CASE("lemmatize is a table lookup with identity fallback") {
  LemmaTable table = {{"mice", "mouse"}, {"ran", "run"}};
  CHECK(lemmatize("mice", table) == "mouse");
  CHECK(lemmatize("ran", table) == "run");
  CHECK(lemmatize("parser", {}) == "parser");
}

TEST_CASE("stopword and lemma files") {
  {
    std::ofstream f("/tmp/crealm_stop.txt");
    f << "# comment line\nfoo\n  bar  \n\nbaz # trailing\n";
  }
  StopwordSet stop = load_stopwords("/tmp/crealm_stop.txt");
  CHECK(stop == StopwordSet{"foo", "bar", "baz"});

  {
    std::ofstream f("/tmp/crealm_lemma.tsv");
    f << "mice\tmouse\nran\trun\n";
  }
  LemmaTable lemmas = load_lemma_table("/tmp/crealm_lemma.tsv");
  CHECK(lemmas.at("mice") == "mouse");
  CHECK(lemmas.size() == 2);

  CHECK_THROWS(load_stopwords("/nonexistent/stopwords.txt"));
}

TEST_CASE("preprocess chains tokenize, stopwords, lemma, stem") {
  LemmaTable lemmas = {{"mice", "mouse"}};
  PreprocessOptions opt;
  opt.lemmas = &lemmas;
  CHECK(preprocess("The mice are falling!", opt) == std::vector<std::string>{"mous", "fall"});
  CHECK(preprocess("", opt).empty());
  CHECK(preprocess("the is a", opt).empty());
}

// Frozen vectors for the published algorithm (reference-implementation
// behavior, including agreed->agre and length<=2 passthrough).
TEST_CASE("porter stemmer frozen vocabulary") {
  const std::pair<const char*, const char*> vectors[] = {
      {"caresses", "caress"}, {"ponies", "poni"}, {"ties", "ti"}, {"caress", "caress"},
      {"cats", "cat"}, {"feed", "feed"}, {"agreed", "agre"}, {"plastered", "plaster"},
      {"bled", "bled"}, {"motoring", "motor"}, {"sing", "sing"}, {"conflated", "conflat"},
      {"troubled", "troubl"}, {"sized", "size"}, {"hopping", "hop"}, {"tanned", "tan"},
      {"falling", "fall"}, {"hissing", "hiss"}, {"fizzed", "fizz"}, {"failing", "fail"},
      {"filing", "file"}, {"happy", "happi"}, {"sky", "sky"}, {"relational", "relat"},
      {"conditional", "condit"}, {"rational", "ration"}, {"valenci", "valenc"},
      {"hesitanci", "hesit"}, {"digitizer", "digit"}, {"conformabli", "conform"},
      {"radicalli", "radic"}, {"differentli", "differ"}, {"vileli", "vile"},
      {"analogousli", "analog"}, {"vietnamization", "vietnam"}, {"predication", "predic"},
      {"operator", "oper"}, {"feudalism", "feudal"}, {"decisiveness", "decis"},
      {"hopefulness", "hope"}, {"callousness", "callous"}, {"formaliti", "formal"},
      {"sensitiviti", "sensit"}, {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},
      {"formative", "form"}, {"formalize", "formal"}, {"electriciti", "electr"},
      {"electrical", "electr"}, {"hopeful", "hope"}, {"goodness", "good"},
      {"revival", "reviv"}, {"allowance", "allow"}, {"inference", "infer"},
      {"airliner", "airlin"}, {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
      {"defensible", "defens"}, {"irritant", "irrit"}, {"replacement", "replac"},
      {"adjustment", "adjust"}, {"dependent", "depend"}, {"adoption", "adopt"},
      {"communism", "commun"}, {"activate", "activ"}, {"angulariti", "angular"},
      {"homologous", "homolog"}, {"effective", "effect"}, {"bowdlerize", "bowdler"},
      {"probate", "probat"}, {"rate", "rate"}, {"cease", "ceas"}, {"controll", "control"},
      {"roll", "roll"}, {"generalizations", "gener"}, {"oscillators", "oscil"},
      {"arguments", "argument"}, {"agreement", "agreement"}, {"computation", "comput"},
      {"computer", "comput"}, {"computing", "comput"}, {"connection", "connect"},
      {"connections", "connect"}, {"connective", "connect"}, {"connected", "connect"},
      {"connecting", "connect"}, {"string", "string"}, {"stemmer", "stemmer"},
      {"stemming", "stem"}, {"is", "is"}, {"be", "be"}, {"by", "by"}, {"the", "the"},
      {"tree", "tree"}, {"trees", "tree"}, {"universities", "univers"},
      {"university", "univers"}, {"flying", "fly"}, {"dying", "dy"}, {"lying", "ly"},
      {"crying", "cry"}, {"exception", "except"}, {"exceptional", "except"},
      {"implementation", "implement"}, {"implemented", "implement"}, {"parser", "parser"},
      {"parsing", "pars"}, {"tokenizer", "token"}, {"tokens", "token"},
      {"database", "databas"}, {"databases", "databas"}, {"threads", "thread"},
      {"threading", "thread"}, {"deadlock", "deadlock"},
      {"nullpointerexception", "nullpointerexcept"}, {"serialization", "serial"},
      {"asynchronous", "asynchron"}, {"scheduler", "schedul"}, {"schedulers", "schedul"},
      {"optimization", "optim"}, {"optimizer", "optim"}, {"refactoring", "refactor"},
      {"refactored", "refactor"}, {"dependency", "depend"}, {"dependencies", "depend"},
      {"configuration", "configur"}, {"configurations", "configur"},
      {"compatibility", "compat"}, {"authentication", "authent"},
      {"authorization", "author"}, {"initialization", "initi"}, {"initialized", "initi"},
      {"deprecated", "deprec"}, {"deprecation", "deprec"}, {"documentation", "document"},
  };
  for (const auto& [word, stem] : vectors) {
    CAPTURE(word);
    CHECK(porter_stem(word) == stem);
  }
}

TEST_CASE("porter stem output is never longer than the input") {
  // suffix-substitution steps can lengthen intermediates but not the result
  SplitMix64 rng(1717);
  for (int i = 0; i < 2000; ++i) {
    int len = 1 + static_cast<int>(rng.next_below(12));
    std::string word;
    for (int j = 0; j < len; ++j)
      word.push_back(static_cast<char>('a' + rng.next_below(26)));
    std::string stem = porter_stem(word);
    CHECK(!stem.empty());
    CHECK(stem.size() <= word.size());
  }
}
