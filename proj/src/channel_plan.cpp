#include "tvws/channel_plan.hpp"

#include "tvws/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <cstdio>

namespace tvws {

Channel::Channel(int number) : number_(number) {
  if (!valid(number))
    throw DomainError("channel " + std::to_string(number) + " outside UHF range 21-68");
}

ChannelSet::ChannelSet(std::initializer_list<int> numbers) {
  for (int n : numbers) insert(n);
}

ChannelSet ChannelSet::range(int first, int last) {
  ChannelSet s;
  for (int n = first; n <= last; ++n) s.insert(n);
  return s;
}

std::vector<int> ChannelSet::numbers() const {
  std::vector<int> out;
  out.reserve(size());
  for_each([&](int n) { out.push_back(n); });
  return out;
}

std::string format_channel_ranges(const ChannelSet& set) {
  std::string out;
  const auto nums = set.numbers();
  for (std::size_t i = 0; i < nums.size();) {
    std::size_t j = i;
    while (j + 1 < nums.size() && nums[j + 1] == nums[j] + 1) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(nums[i]);
    if (j > i) out += '-' + std::to_string(nums[j]);
    i = j + 1;
  }
  return out;
}

std::string format_channel_list(const ChannelSet& set, std::string_view sep) {
  std::string out;
  set.for_each([&](int n) {
    if (!out.empty()) out += sep;
    out += std::to_string(n);
  });
  return out;
}

Band channel_to_band(Channel ch) {
  const double low = kBandStartMhz + kChannelWidthMhz * (ch.number() - kFirstChannel);
  return {low, low + kChannelWidthMhz};
}

Band channel_to_band(int number) { return channel_to_band(Channel(number)); }

double bandwidth_mhz(const ChannelSet& channels) {
  return kChannelWidthMhz * static_cast<double>(channels.size());
}

ChannelPlan::ChannelPlan(ChannelSet interleaved, ChannelSet excluded)
    : interleaved_(interleaved), excluded_(excluded) {
  if (!interleaved_.disjoint(excluded_))
    throw DataError("channel plan: channels " + format_channel_ranges(interleaved_ & excluded_) +
                    " are both interleaved and excluded");
  cleared_ = ChannelSet::all() - interleaved_ - excluded_;
}

ChannelPlan ChannelPlan::default_plan() {
  return ChannelPlan(ChannelSet::range(21, 30) | ChannelSet::range(41, 60), ChannelSet{61, 62});
}

ChannelClass ChannelPlan::classify(Channel ch) const noexcept {
  if (interleaved_.contains(ch)) return ChannelClass::interleaved;
  if (excluded_.contains(ch)) return ChannelClass::excluded;
  return ChannelClass::cleared;
}

std::string ChannelPlan::to_text() const {
  return "interleaved = " + format_channel_ranges(interleaved_) +
         "\nexcluded = " + format_channel_ranges(excluded_) +
         "\ncleared = " + format_channel_ranges(cleared_) + "\n";
}

std::string ChannelPlan::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_text()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ChannelSet parse_channel_ranges(std::string_view text) {
  ChannelSet out;
  for (auto item : detail::split(text, ',')) {
    item = detail::trim(item);
    if (item.empty()) throw ParseError("empty channel entry");
    int first = 0, last = 0;
    if (const auto dash = item.find('-'); dash != std::string_view::npos) {
      first = detail::parse_int(detail::trim(item.substr(0, dash)), "channel");
      last = detail::parse_int(detail::trim(item.substr(dash + 1)), "channel");
    } else {
      first = last = detail::parse_int(item, "channel");
    }
    if (!Channel::valid(first) || !Channel::valid(last))
      throw ParseError("unknown channel in '" + std::string(item) + "' (valid: 21-68)");
    if (first > last) throw ParseError("descending channel range '" + std::string(item) + "'");
    out |= ChannelSet::range(first, last);
  }
  return out;
}

ChannelPlan load_plan(std::string_view text) {
  ChannelSet sets[3];
  int first_line[kChannelCount] = {};
  int owner[kChannelCount];
  std::fill(std::begin(owner), std::end(owner), -1);
  bool any = false;
  int line_no = 0;

  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    line = detail::trim(detail::strip_comment(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto where = "plan line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ParseError(where + "expected 'key = channels'");
    const auto key = detail::trim(line.substr(0, eq));
    int which = -1;
    if (key == "interleaved") which = 0;
    else if (key == "cleared") which = 1;
    else if (key == "excluded") which = 2;
    else throw ParseError(where + "unknown key '" + std::string(key) + "'");

    ChannelSet chans;
    try {
      chans = parse_channel_ranges(line.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
    chans.for_each([&](int n) {
      const auto i = static_cast<std::size_t>(n - kFirstChannel);
      if (owner[i] >= 0 && owner[i] != which)
        throw ParseError(where + "channel " + std::to_string(n) + " already assigned on line " +
                         std::to_string(first_line[i]));
      if (owner[i] < 0) {
        owner[i] = which;
        first_line[i] = line_no;
      }
    });
    sets[which] |= chans;
    any = true;
  }
  if (!any) throw ParseError("plan file contains no directives");
  return ChannelPlan(sets[0], sets[2]);
}

} // namespace tvws
