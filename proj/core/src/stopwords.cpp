#include "conceptrealm/text.hpp"

namespace conceptrealm {

namespace {

// Standard English function words. Override with a user file when the
// corpus needs a domain-specific list.
constexpr const char* kDefaultStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and",
    "any", "are", "aren", "as", "at", "be", "because", "been", "before", "being", "below",
    "between", "both", "but", "by", "can", "cannot", "could", "couldn", "did", "didn",
    "do", "does", "doesn", "doing", "don", "down", "during", "each", "either", "else",
    "ever", "every", "few", "for", "from", "further", "had", "hadn", "has", "hasn",
    "have", "haven", "having", "he", "her", "here", "hers", "herself", "him", "himself",
    "his", "how", "i", "if", "in", "into", "is", "isn", "it", "its", "itself", "just",
    "let", "may", "me", "might", "more", "most", "must", "mustn", "my", "myself",
    "neither", "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or",
    "other", "ought", "our", "ours", "ourselves", "out", "over", "own", "same", "shall",
    "shan", "she", "should", "shouldn", "since", "so", "some", "such", "than", "that",
    "the", "their", "theirs", "them", "themselves", "then", "there", "these", "they",
    "this", "those", "through", "to", "too", "under", "until", "up", "upon", "us",
    "very", "was", "wasn", "we", "were", "weren", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "won", "would", "wouldn", "yet",
    "you", "your", "yours", "yourself", "yourselves"};

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet set(std::begin(kDefaultStopwords), std::end(kDefaultStopwords));
  return set;
}

}  // namespace conceptrealm
