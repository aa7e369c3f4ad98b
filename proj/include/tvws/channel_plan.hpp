#pragma once

#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace tvws {

inline constexpr int kFirstChannel = 21;
inline constexpr int kLastChannel = 68;
inline constexpr int kChannelCount = kLastChannel - kFirstChannel + 1;
/// DVB-T raster width.
inline constexpr double kChannelWidthMhz = 8.0;
/// Lower edge of channel 21.
inline constexpr double kBandStartMhz = 470.0;

/// A UK UHF channel number in [21, 68].
class Channel {
public:
  /// Throws DomainError outside [21, 68].
  explicit Channel(int number);

  int number() const noexcept { return number_; }
  std::size_t index() const noexcept { return static_cast<std::size_t>(number_ - kFirstChannel); }

  static bool valid(int number) noexcept { return number >= kFirstChannel && number <= kLastChannel; }

  friend auto operator<=>(const Channel&, const Channel&) = default;

private:
  int number_;
};

/// Set of UHF channels, stored as a 48-bit mask. Iterates in ascending order.
class ChannelSet {
public:
  ChannelSet() = default;
  ChannelSet(std::initializer_list<int> numbers);

  /// All channels in [first, last]; both ends must be valid channels.
  static ChannelSet range(int first, int last);
  static ChannelSet all() { return range(kFirstChannel, kLastChannel); }

  void insert(Channel ch) { bits_.set(ch.index()); }
  void insert(int number) { insert(Channel(number)); }
  void erase(Channel ch) { bits_.reset(ch.index()); }
  /// Out-of-range numbers are never members.
  bool contains(int number) const noexcept {
    return Channel::valid(number) && bits_.test(static_cast<std::size_t>(number - kFirstChannel));
  }
  bool contains(Channel ch) const noexcept { return bits_.test(ch.index()); }

  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }

  std::vector<int> numbers() const;

  bool subset_of(const ChannelSet& other) const noexcept { return (bits_ & ~other.bits_).none(); }
  bool disjoint(const ChannelSet& other) const noexcept { return (bits_ & other.bits_).none(); }

  ChannelSet operator|(const ChannelSet& o) const noexcept { return ChannelSet(bits_ | o.bits_); }
  ChannelSet operator&(const ChannelSet& o) const noexcept { return ChannelSet(bits_ & o.bits_); }
  /// Set difference.
  ChannelSet operator-(const ChannelSet& o) const noexcept { return ChannelSet(bits_ & ~o.bits_); }
  ChannelSet& operator|=(const ChannelSet& o) noexcept {
    bits_ |= o.bits_;
    return *this;
  }

  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_.test(i)) f(static_cast<int>(i) + kFirstChannel);
  }

private:
  using Bits = std::bitset<kChannelCount>;
  explicit ChannelSet(Bits bits) : bits_(bits) {}
  Bits bits_;
};

/// Formats as compact ranges, e.g. "21-30,41-60". Empty set -> "".
std::string format_channel_ranges(const ChannelSet& set);
/// Formats as a `sep`-separated list of numbers.
std::string format_channel_list(const ChannelSet& set, std::string_view sep);

struct Band {
  double low_mhz;
  double high_mhz;
};

/// Frequency band of a channel: [470 + 8(ch-21), 478 + 8(ch-21)] MHz.
Band channel_to_band(Channel ch);
Band channel_to_band(int number);

/// Total width of a channel set, 8 MHz per channel.
double bandwidth_mhz(const ChannelSet& channels);

enum class ChannelClass { interleaved, cleared, excluded };

/// Partition of channels 21..68 into interleaved (white space), cleared and
/// excluded (auctioned/reserved). Immutable once constructed.
class ChannelPlan {
public:
  /// Throws DataError unless the three sets are pairwise disjoint.
  /// Channels in none of the sets become cleared.
  ChannelPlan(ChannelSet interleaved, ChannelSet excluded);

  /// 21-30 and 41-60 interleaved (30 channels, 240 MHz), 61-62 excluded.
  static ChannelPlan default_plan();

  const ChannelSet& interleaved() const noexcept { return interleaved_; }
  const ChannelSet& cleared() const noexcept { return cleared_; }
  const ChannelSet& excluded() const noexcept { return excluded_; }

  ChannelClass classify(Channel ch) const noexcept;

  /// Canonical text form, parseable by load_plan().
  std::string to_text() const;
  /// 16 hex digits, FNV-1a over to_text(). Stable across platforms.
  std::string hash() const;

  friend bool operator==(const ChannelPlan&, const ChannelPlan&) = default;

private:
  ChannelSet interleaved_;
  ChannelSet cleared_;
  ChannelSet excluded_;
};

/// Parses a plan file:
///
///     # comment
///     interleaved = 21-30, 41-60
///     excluded = 61, 62
///
/// `cleared = ...` is accepted as well; unlisted channels are cleared.
/// Throws ParseError (with line number) on malformed lines, unknown keys,
/// channel numbers outside 21..68, a channel listed in two different sets, or
/// a file with no directives at all.
ChannelPlan load_plan(std::string_view text);

/// Parses "21-30, 41-60, 61" into a set. Throws ParseError.
ChannelSet parse_channel_ranges(std::string_view text);

} // namespace tvws
