// Copyright 2026 The invsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Offline stand-in for the language model. Every entry draws from its own
// stream derived from (seed, fragment id), so an entry's output does not
// depend on which other fragments are planned.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <regex>

#include "invsynth/content_gen.hpp"
#include "rng.hpp"
#include "utf8.hpp"

namespace invsynth {

namespace {

using detail::Rng;

constexpr double kLengthSlack = 0.4;
constexpr int kAttempts = 200;

constexpr std::array<std::string_view, 12> kMonthsFull{
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};
constexpr std::array<std::string_view, 12> kMonthsShort{
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

WordLists make_builtin() {
  WordLists w;
  w.company_stems = {
      "Northwind", "Bluewater", "Crestline", "Ironbridge", "Summit",
      "Harborview", "Redwood", "Silverline", "Granite", "Meridian",
      "Oakridge", "Pinecrest", "Lakeshore", "Brightpath", "Stonegate",
      "Evergreen", "Westfield", "Clearwater", "Riverbend", "Sunfield",
      "Keystone", "Falcon", "Horizon", "Cobalt", "Juniper", "Atlas",
      "Beacon", "Copper", "Vantage", "Orchard"};
  w.company_suffixes = {"Ltd.", "Inc.", "LLC", "Co.", "Group", "Corp.",
                        "Partners", "Holdings", "Trading", "Supply"};
  w.street_names = {"Maple", "Oak", "Cedar", "Harbor", "Mill", "Station",
                    "Church", "Park", "Lake", "Hill", "River", "Market",
                    "Bridge", "Orchard", "Willow", "Highland", "Sunset",
                    "Garden", "Forest", "Spring", "Meadow", "Quarry"};
  w.street_types = {"Street", "Avenue", "Road", "Lane", "Drive", "Way",
                    "Court", "Boulevard", "Place", "St", "Ave", "Rd"};
  w.cities = {"Springfield", "Riverton", "Fairview", "Greenville", "Franklin",
              "Clinton", "Madison", "Georgetown", "Salem", "Ashland",
              "Burlington", "Milford", "Oxford", "Dover", "Kingston",
              "Newport", "Lexington", "Arlington"};
  w.first_names = {"James", "Maria", "Robert", "Linda", "Michael", "Sarah",
                   "David", "Emma", "Daniel", "Olivia", "Thomas", "Sophia",
                   "Carlos", "Aisha", "Wei", "Priya", "Lucas", "Nora",
                   "Ethan", "Hannah", "Omar", "Grace", "Samuel", "Chloe"};
  w.last_names = {"Smith", "Johnson", "Garcia", "Chen", "Patel", "Nguyen",
                  "Kowalski", "Brown", "Martinez", "Okafor", "Larsen",
                  "Rossi", "Tanaka", "Dubois", "Schmidt", "Murphy", "Novak",
                  "Silva", "Walker", "Hughes"};
  w.item_words = {"freight", "delivery", "storage", "consulting",
                  "maintenance", "installation", "packaging", "inspection",
                  "labour", "equipment", "rental", "software", "license",
                  "support", "cleaning", "repair", "transport", "handling",
                  "services", "materials", "supplies", "printing", "design",
                  "training", "hosting", "parts", "fee", "monthly", "express",
                  "standard", "annual", "office", "warehouse", "pallet",
                  "cargo", "insurance", "customs", "review", "setup", "kit"};
  return w;
}

// ---------------------------------------------------------------- helpers

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string truncate_codepoints(std::string_view s, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      if (count == n) return std::string(s.substr(0, i));
      ++count;
    }
  }
  return std::string(s);
}

/// Replaces every ASCII digit with a random one; a run's leading digit stays
/// non-zero when it was non-zero.
std::string resample_digits(std::string_view original, Rng& rng) {
  std::string out(original);
  bool run_start = true;
  for (auto& c : out) {
    if (is_digit(c)) {
      const bool keep_nonzero = run_start && c != '0';
      c = static_cast<char>('0' + rng.uniform_int(keep_nonzero ? 1 : 0, 9));
      run_start = false;
    } else {
      run_start = true;
    }
  }
  return out;
}

std::string two_digits(int v) {
  return v < 10 ? "0" + std::to_string(v) : std::to_string(v);
}

// ------------------------------------------------------------------ dates

struct DateDraw {
  int year;
  int month;
  int day;
};

DateDraw draw_date(Rng& rng) {
  return {rng.uniform_int(2020, 2029), rng.uniform_int(1, 12),
          rng.uniform_int(1, 28)};
}

std::string ordinal_suffix(int day) {
  if (day >= 11 && day <= 13) return "th";
  switch (day % 10) {
    case 1: return "st";
    case 2: return "nd";
    case 3: return "rd";
    default: return "th";
  }
}

std::string styled_like(std::string_view word, std::string_view model) {
  std::string w(word);
  const bool all_upper =
      std::all_of(model.begin(), model.end(), [](char c) { return !is_alpha(c) || std::isupper(static_cast<unsigned char>(c)); });
  const bool all_lower =
      std::all_of(model.begin(), model.end(), [](char c) { return !is_alpha(c) || std::islower(static_cast<unsigned char>(c)); });
  if (all_upper) return upper(w);
  if (all_lower) return lower(w);
  return capitalized(lower(w));
}

std::optional<int> month_index(std::string_view token, bool* is_full) {
  const auto t = lower(std::string(token));
  for (int m = 0; m < 12; ++m) {
    if (t == lower(std::string(kMonthsFull[m]))) {
      *is_full = kMonthsFull[m].size() > 3;
      return m;
    }
    if (t == lower(std::string(kMonthsShort[m])) || (m == 8 && t == "sept")) {
      *is_full = false;
      return m;
    }
  }
  return std::nullopt;
}

std::string numeric_part(int value, std::string_view original_width) {
  return original_width.size() >= 2 ? two_digits(value) : std::to_string(value);
}

std::string mock_date(const std::string& original, Rng& rng) {
  const auto d = draw_date(rng);
  static const std::regex kDmyLike(R"((\d{1,2})([/.\-])(\d{1,2})([/.\-])(\d{4}|\d{2}))");
  static const std::regex kIsoLike(R"((\d{4})([/.\-])(\d{1,2})([/.\-])(\d{1,2}))");
  std::smatch m;
  if (std::regex_match(original, m, kIsoLike)) {
    return std::to_string(d.year) + m[2].str() + numeric_part(d.month, m[3].str()) +
           m[4].str() + numeric_part(d.day, m[5].str());
  }
  if (std::regex_match(original, m, kDmyLike)) {
    const bool day_first = std::stoi(m[1].str()) > 12;
    const int first = day_first ? d.day : d.month;
    const int second = day_first ? d.month : d.day;
    const auto year = m[5].length() == 2 ? two_digits(d.year % 100)
                                         : std::to_string(d.year);
    return numeric_part(first, m[1].str()) + m[2].str() +
           numeric_part(second, m[3].str()) + m[4].str() + year;
  }

  // Textual dates: walk the tokens and swap day, month name and year.
  std::string out;
  std::size_t i = 0;
  bool swapped_any = false;
  while (i < original.size()) {
    const char c = original[i];
    std::size_t j = i;
    if (is_digit(c)) {
      while (j < original.size() && is_digit(original[j])) ++j;
      const auto run = original.substr(i, j - i);
      if (run.size() == 4) {
        out += std::to_string(d.year);
      } else {
        out += numeric_part(d.day, run);
        // Rewrite a trailing ordinal to agree with the new day.
        std::size_t k = j;
        while (k < original.size() && is_alpha(original[k])) ++k;
        const auto suffix = lower(original.substr(j, k - j));
        if (suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th") {
          out += styled_like(ordinal_suffix(d.day), original.substr(j, k - j));
          j = k;
        }
      }
      swapped_any = true;
    } else if (is_alpha(c)) {
      while (j < original.size() && is_alpha(original[j])) ++j;
      const auto word = original.substr(i, j - i);
      bool full = false;
      if (month_index(word, &full)) {
        const auto name = full ? kMonthsFull[d.month - 1] : kMonthsShort[d.month - 1];
        out += styled_like(name, word);
        swapped_any = true;
      } else {
        out += word;
      }
    } else {
      j = i + 1;
      out += c;
    }
    i = j;
  }
  if (swapped_any) return out;
  return two_digits(d.month) + "/" + two_digits(d.day) + "/" + std::to_string(d.year);
}

// -------------------------------------------------------------- currency

std::string group_thousands(long long v) {
  auto s = std::to_string(v);
  for (int pos = static_cast<int>(s.size()) - 3; pos > 0; pos -= 3) {
    s.insert(static_cast<std::size_t>(pos), ",");
  }
  return s;
}

std::string mock_currency(const std::string& original, Rng& rng) {
  static const std::regex kShape(
      R"((-?)(\$|€|£|USD|EUR|GBP)?( ?)(-?)([\d,]+)(\.\d+)?( ?)(\$|€|£|USD|EUR|GBP)?)");
  std::smatch m;
  std::string sign_outer, prefix, prefix_gap, sign_inner, suffix_gap, suffix;
  bool grouped = original.find(',') != std::string::npos;
  if (std::regex_match(original, m, kShape)) {
    sign_outer = m[1].str();
    prefix = m[2].str();
    prefix_gap = prefix.empty() ? "" : m[3].str();
    sign_inner = m[4].str();
    suffix_gap = m[8].matched ? m[7].str() : "";
    suffix = m[8].str();
    grouped = m[5].str().find(',') != std::string::npos;
  } else {
    prefix = "$";
  }
  // Magnitude first so short and long amounts are equally likely.
  const int digits = rng.uniform_int(1, 5);
  long long lo = 1;
  for (int k = 1; k < digits; ++k) lo *= 10;
  const long long whole = rng.uniform_int(static_cast<int>(lo), static_cast<int>(lo * 10 - 1));
  const int cents = rng.uniform_int(0, 99);
  const auto amount = (grouped ? group_thousands(whole) : std::to_string(whole)) +
                      "." + two_digits(cents);
  return sign_outer + prefix + prefix_gap + sign_inner + amount + suffix_gap + suffix;
}

// ------------------------------------------------------------------ email

std::string mock_email(const WordLists& w, Rng& rng) {
  static const std::array<std::string_view, 5> kTld{"com", "net", "org", "io", "co"};
  const auto first = lower(rng.pick(w.first_names));
  const auto last = lower(rng.pick(w.last_names));
  std::string local;
  switch (rng.uniform_int(0, 3)) {
    case 0: local = first + "." + last; break;
    case 1: local = first.substr(0, 1) + last; break;
    case 2: local = first; break;
    default: local = rng.coin() ? "billing" : "accounts"; break;
  }
  std::string domain;
  for (char c : lower(rng.pick(w.company_stems))) {
    if (std::isalnum(static_cast<unsigned char>(c))) domain += c;
  }
  if (domain.empty()) domain = "example";
  return local + "@" + domain + "." + std::string(kTld[rng.uniform(0, kTld.size() - 1)]);
}

// -------------------------------------------------------------- free text

enum class TextKind { kCompany, kAddress, kPerson, kGeneric };

TextKind detect_kind(const std::string& original) {
  static const std::array<std::string_view, 14> kSuffixes{
      "ltd", "inc", "llc", "co", "corp", "gmbh", "limited", "group",
      "plc", "partners", "holdings", "trading", "supply", "company"};
  const auto words = split_words(original);
  if (words.empty()) return TextKind::kGeneric;
  std::string last = lower(words.back());
  while (!last.empty() && !is_alpha(last.back())) last.pop_back();
  if (words.size() >= 2 &&
      std::find(kSuffixes.begin(), kSuffixes.end(), last) != kSuffixes.end()) {
    return TextKind::kCompany;
  }
  if (words.size() >= 2 &&
      std::all_of(words[0].begin(), words[0].end(), is_digit) &&
      std::any_of(words[1].begin(), words[1].end(), is_alpha)) {
    return TextKind::kAddress;
  }
  if (words.size() >= 2 && words.size() <= 3 &&
      std::all_of(words.begin(), words.end(), [](const std::string& word) {
        if (word.size() < 2 || !std::isupper(static_cast<unsigned char>(word[0])))
          return false;
        return std::all_of(word.begin() + 1, word.end(), [](char c) {
          return std::islower(static_cast<unsigned char>(c)) || c == '-' || c == '\'';
        });
      })) {
    return TextKind::kPerson;
  }
  return TextKind::kGeneric;
}

enum class CaseStyle { kUpper, kTitle, kSentence, kLower };

CaseStyle detect_case(const std::string& original) {
  bool any_lower = false;
  bool any_alpha = false;
  for (char c : original) {
    if (is_alpha(c)) {
      any_alpha = true;
      any_lower = any_lower || std::islower(static_cast<unsigned char>(c));
    }
  }
  if (any_alpha && !any_lower) return CaseStyle::kUpper;
  const auto words = split_words(original);
  const bool all_cap = !words.empty() && std::all_of(words.begin(), words.end(), [](const std::string& w) {
    return !is_alpha(w[0]) || std::isupper(static_cast<unsigned char>(w[0]));
  });
  if (all_cap && words.size() > 1) return CaseStyle::kTitle;
  if (!original.empty() && std::isupper(static_cast<unsigned char>(original[0]))) {
    return CaseStyle::kSentence;
  }
  return CaseStyle::kLower;
}

std::string apply_case(const std::vector<std::string>& words, CaseStyle style) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    switch (style) {
      case CaseStyle::kUpper: w = upper(w); break;
      case CaseStyle::kTitle: w = capitalized(w); break;
      case CaseStyle::kSentence: w = i == 0 ? capitalized(lower(w)) : lower(w); break;
      case CaseStyle::kLower: w = lower(w); break;
    }
    if (i) out += ' ';
    out += w;
  }
  return out;
}

std::string trailing_punct(const std::string& original) {
  if (!original.empty() && (original.back() == ':' || original.back() == '.')) {
    // A company suffix such as "Ltd." carries its own period.
    return original.back() == ':' ? ":" : "";
  }
  return "";
}

std::string company_candidate(const WordLists& w, Rng& rng) {
  std::string name = rng.pick(w.company_stems);
  if (rng.uniform_int(0, 3) == 0) name += " " + rng.pick(w.company_stems);
  return name + " " + rng.pick(w.company_suffixes);
}

std::string address_candidate(const WordLists& w, Rng& rng, bool with_city) {
  const int digits = rng.uniform_int(1, 4);
  std::string number = std::to_string(rng.uniform_int(1, 9));
  for (int k = 1; k < digits; ++k) number += std::to_string(rng.uniform_int(0, 9));
  std::string s = number + " " + rng.pick(w.street_names) + " " + rng.pick(w.street_types);
  if (with_city) s += ", " + rng.pick(w.cities);
  return s;
}

std::string person_candidate(const WordLists& w, Rng& rng, bool middle) {
  std::string s = rng.pick(w.first_names);
  if (middle) s += std::string(" ") + static_cast<char>('A' + rng.uniform_int(0, 25)) + ".";
  return s + " " + rng.pick(w.last_names);
}

std::string generic_candidate(const WordLists& w, Rng& rng, std::size_t target,
                              std::size_t hi, CaseStyle style) {
  std::vector<std::string> words;
  std::size_t len = 0;
  for (int guard = 0; guard < 64 && len < target; ++guard) {
    const auto& word = rng.pick(w.item_words);
    const auto add = detail::codepoint_count(word) + (words.empty() ? 0 : 1);
    if (len + add > hi) continue;
    words.push_back(word);
    len += add;
  }
  return apply_case(words, style);
}

/// Always lands in [lo, hi]: concatenates vocabulary words and cuts the last
/// one to length.
std::string filler(const WordLists& w, Rng& rng, std::size_t lo, std::size_t hi) {
  std::string out;
  std::size_t len = 0;
  while (len < lo) {
    std::string word = rng.pick(w.item_words);
    if (word.empty()) word = "item";
    const std::size_t gap = out.empty() ? 0 : 1;
    if (len + gap + detail::codepoint_count(word) > hi) {
      if (hi <= len + gap) break;
      word = truncate_codepoints(word, hi - len - gap);
    }
    if (gap) out += ' ';
    out += word;
    len = detail::codepoint_count(out);
  }
  if (out.empty()) out = "x";
  return capitalized(out);
}

std::string mock_free_text(const std::string& original, const WordLists& w, Rng& rng) {
  const auto length = std::max<std::size_t>(1, detail::codepoint_count(original));
  const auto lo = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil((1.0 - kLengthSlack) * static_cast<double>(length))));
  const auto hi = std::max<std::size_t>(
      lo, static_cast<std::size_t>(std::floor((1.0 + kLengthSlack) * static_cast<double>(length))));
  const auto kind = detect_kind(original);
  const auto style = detect_case(original);
  const auto punct = trailing_punct(original);
  const auto words = split_words(original);

  const auto fits = [&](const std::string& s) {
    const auto n = detail::codepoint_count(s);
    return n >= lo && n <= hi && classify_fragment(s) == ContentClass::kFreeText;
  };

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::string candidate;
    switch (kind) {
      case TextKind::kCompany:
        candidate = company_candidate(w, rng);
        if (style == CaseStyle::kUpper) candidate = upper(candidate);
        break;
      case TextKind::kAddress:
        candidate = address_candidate(w, rng, original.find(',') != std::string::npos);
        break;
      case TextKind::kPerson:
        candidate = person_candidate(w, rng, words.size() == 3);
        break;
      case TextKind::kGeneric: {
        const auto target = static_cast<std::size_t>(
            rng.uniform(lo, hi) - std::min<std::size_t>(punct.size(), lo - 1));
        candidate = generic_candidate(w, rng, target, hi - punct.size(), style) + punct;
        break;
      }
    }
    if (fits(candidate)) return candidate;
  }
  auto fallback = filler(w, rng, lo, hi);
  if (fits(fallback)) return fallback;
  return std::string(lo, 'x');
}

// -------------------------------------------------------------- dispatch

std::string fallback_for(ContentClass cls, Rng& rng) {
  const auto d = draw_date(rng);
  switch (cls) {
    case ContentClass::kDate:
      return two_digits(d.month) + "/" + two_digits(d.day) + "/" + std::to_string(d.year);
    case ContentClass::kCurrencyAmount:
      return "$" + std::to_string(rng.uniform_int(1, 99999)) + "." + two_digits(rng.uniform_int(0, 99));
    case ContentClass::kNumericId:
      return std::to_string(rng.uniform_int(100000, 999999));
    case ContentClass::kEmail:
      return "contact@example.com";
    case ContentClass::kPhone:
      return "555-" + std::to_string(rng.uniform_int(100, 999)) + "-" +
             std::to_string(rng.uniform_int(1000, 9999));
    case ContentClass::kFreeText:
      return "Item";
  }
  return "Item";
}

std::string mock_entry(const PlanEntry& entry, const WordLists& w, Rng& rng) {
  const std::string original(detail::trim(entry.original_text));
  std::string out;
  switch (entry.content_class) {
    case ContentClass::kDate: out = mock_date(original, rng); break;
    case ContentClass::kCurrencyAmount: out = mock_currency(original, rng); break;
    case ContentClass::kNumericId:
    case ContentClass::kPhone:
      out = classify_fragment(original) == entry.content_class
                ? resample_digits(original, rng)
                : fallback_for(entry.content_class, rng);
      break;
    case ContentClass::kEmail: out = mock_email(w, rng); break;
    case ContentClass::kFreeText: out = mock_free_text(original, w, rng); break;
  }
  if (classify_fragment(out) != entry.content_class) {
    out = fallback_for(entry.content_class, rng);
  }
  return out;
}

}  // namespace

const WordLists& WordLists::builtin() {
  static const WordLists lists = make_builtin();
  return lists;
}

WordLists WordLists::merged(const WordLists& o) {
  const auto& b = builtin();
  const auto pick = [](const std::vector<std::string>& a,
                       const std::vector<std::string>& fallback) {
    return a.empty() ? fallback : a;
  };
  WordLists w;
  w.company_stems = pick(o.company_stems, b.company_stems);
  w.company_suffixes = pick(o.company_suffixes, b.company_suffixes);
  w.street_names = pick(o.street_names, b.street_names);
  w.street_types = pick(o.street_types, b.street_types);
  w.cities = pick(o.cities, b.cities);
  w.first_names = pick(o.first_names, b.first_names);
  w.last_names = pick(o.last_names, b.last_names);
  w.item_words = pick(o.item_words, b.item_words);
  return w;
}

ReplacementMap mock_generate(const ReplacementPlan& plan, std::uint64_t seed,
                             const WordLists& words) {
  const auto lists = WordLists::merged(words);
  ReplacementMap map;
  for (const auto& entry : plan.entries) {
    Rng rng(detail::mix64(seed ^ detail::mix64(detail::fnv1a64(entry.fragment_id))));
    map[entry.fragment_id] = mock_entry(entry, lists, rng);
  }
  return map;
}

}  // namespace invsynth
