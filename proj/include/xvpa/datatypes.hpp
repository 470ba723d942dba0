#ifndef XVPA_DATATYPES_HPP
#define XVPA_DATATYPES_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace xvpa {

/* The 44 datatypes. Ordering here is only an enumeration order; subtype
   structure lives in DatatypeSystem, display names in datatype_name(). */
enum class Datatype : std::uint8_t {
    String,
    NormalizedString,
    Token,
    Nmtoken,
    Name,
    QName,
    NCName,
    Language,
    AnyUri,
    Boolean,
    Boolean0,
    Boolean1,
    BooleanNum,
    Byte,
    UnsignedByte,
    Short,
    UnsignedShort,
    Int,
    UnsignedInt,
    Long,
    UnsignedLong,
    Integer,
    NonNegativeInteger,
    NonPositiveInteger,
    PositiveInteger,
    NegativeInteger,
    EvenLenInteger,
    Decimal,
    Double,
    Duration,
    YearMonthDuration,
    DateTimeDuration,
    DateTime,
    DateTimeStamp,
    Date,
    Time,
    GYear,
    GYearMonth,
    GMonth,
    GMonthDay,
    GDay,
    HexBinary,
    Base64Binary,
    Base64BinaryLf,
};

inline constexpr std::size_t kDatatypeCount = 44;

std::string_view datatype_name(Datatype d);
std::optional<Datatype> datatype_from_name(std::string_view name);

/* Small set of datatypes, one bit per enumerator. Iterates in enum order. */
class DatatypeSet {
public:
    constexpr DatatypeSet() = default;
    constexpr DatatypeSet(std::initializer_list<Datatype> ds) {
        for (Datatype d : ds) insert(d);
    }

    constexpr void insert(Datatype d) { bits_ |= bit(d); }
    constexpr void erase(Datatype d) { bits_ &= ~bit(d); }
    constexpr bool contains(Datatype d) const { return (bits_ & bit(d)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return std::popcount(bits_); }

    constexpr DatatypeSet& operator|=(DatatypeSet o) { bits_ |= o.bits_; return *this; }
    constexpr DatatypeSet& operator&=(DatatypeSet o) { bits_ &= o.bits_; return *this; }
    friend constexpr DatatypeSet operator|(DatatypeSet a, DatatypeSet b) { return a |= b; }
    friend constexpr DatatypeSet operator&(DatatypeSet a, DatatypeSet b) { return a &= b; }
    constexpr bool operator==(const DatatypeSet&) const = default;
    constexpr bool subset_of(DatatypeSet o) const { return (bits_ & ~o.bits_) == 0; }

    constexpr std::uint64_t bits() const { return bits_; }
    static constexpr DatatypeSet from_bits(std::uint64_t b) {
        DatatypeSet s;
        s.bits_ = b;
        return s;
    }

    class iterator {
    public:
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr Datatype operator*() const {
            return static_cast<Datatype>(std::countr_zero(rest_));
        }
        constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        constexpr bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

    private:
        std::uint64_t rest_;
    };
    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<Datatype> to_vector() const;

private:
    static constexpr std::uint64_t bit(Datatype d) {
        return std::uint64_t{1} << static_cast<unsigned>(d);
    }
    std::uint64_t bits_ = 0;
};

/* The datatype poset: 44 lexical spaces ordered by inclusion, with the
   minimal-type and downward-closure operations the learner and validator
   need. Immutable after construction; use instance() for the shared copy. */
class DatatypeSystem {
public:
    DatatypeSystem();
    static const DatatypeSystem& instance();

    /* Version pin serialized into model files. */
    static constexpr std::string_view version = "xsd44.1";

    /* Anchored whole-string membership test of text in d's lexical space.
       Total: never throws, any byte sequence is acceptable input. */
    static bool lexical_match(Datatype d, std::string_view text);

    /* Subtype test: true iff every string matching a also matches b
       (by the poset, not by running matchers). Reflexive. */
    bool leq(Datatype a, Datatype b) const;

    /* Antichain of minimal datatypes whose lexical space contains text.
       Never empty: the top datatype accepts every string. */
    DatatypeSet types(std::string_view text) const;

    /* Least element of types(text) in canonical_order(). */
    Datatype first_type(std::string_view text) const;

    /* Downward closure: all a with a <= s for some s in the set. */
    DatatypeSet cl_inverse(DatatypeSet s) const;

    /* Fixed linear extension of the poset (topological, lexicographic by
       name among ready elements). first_type resolves ties with it. */
    std::span<const Datatype> canonical_order() const;
    std::size_t canonical_rank(Datatype d) const { return rank_[idx(d)]; }

    /* Cover edges (a, b) with a <= b; the transitive reduction the poset is
       generated from. Exposed for diagnostics and independent test oracles. */
    static std::span<const std::pair<Datatype, Datatype>> hasse_edges();

private:
    static constexpr std::size_t idx(Datatype d) { return static_cast<std::size_t>(d); }
    DatatypeSet up_[kDatatypeCount];   // up_[a] = {b | a <= b}
    DatatypeSet down_[kDatatypeCount]; // down_[b] = {a | a <= b}
    Datatype order_[kDatatypeCount];
    std::size_t rank_[kDatatypeCount];
};

} // namespace xvpa

#endif
