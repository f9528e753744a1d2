#include "ratenet/parse.hpp"

#include <charconv>
#include <sstream>

namespace ratenet {

namespace {

bool parse_double(std::string_view sv, double& out) {
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out);
    return ec == std::errc{} && ptr == sv.data() + sv.size();
}

bool parse_i64(std::string_view sv, std::int64_t& out) {
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out);
    return ec == std::errc{} && ptr == sv.data() + sv.size();
}

void check_rating(double r, const DatasetProfile& profile, std::uint64_t line) {
    if (r < profile.min_rating || r > profile.max_rating)
        throw ParseError(line, "rating " + std::to_string(r) + " outside scale");
}

void check_timestamp(std::int64_t t, std::uint64_t line) {
    if (t < 0) throw ParseError(line, "negative timestamp");
}

std::string_view trim(std::string_view sv) {
    while (!sv.empty() && (sv.back() == '\r' || sv.back() == '\n')) sv.remove_suffix(1);
    return sv;
}

std::vector<std::string_view> split_ws(std::string_view sv) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < sv.size()) {
        while (i < sv.size() && (sv[i] == ' ' || sv[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < sv.size() && sv[j] != ' ' && sv[j] != '\t') ++j;
        if (j > i) out.push_back(sv.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string_view> split_char(std::string_view sv, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = sv.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(sv.substr(start));
            return out;
        }
        out.push_back(sv.substr(start, pos - start));
        start = pos + 1;
    }
}

// Runs `per_line` over data lines; lenient mode counts record-level failures
// instead of aborting.
template <typename Fn>
void for_each_record(std::istream& in, ParseMode mode, ParseStats* stats, Fn per_line) {
    std::string line;
    std::uint64_t line_no = 0;
    std::uint64_t data_lines = 0;
    std::uint64_t skipped = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '%') continue;
        ++data_lines;
        try {
            per_line(sv, line_no);
        } catch (const ParseError&) {
            if (mode == ParseMode::strict) throw;
            ++skipped;
        }
    }
    if (stats) {
        stats->data_lines = data_lines;
        stats->skipped = skipped;
    }
}

}  // namespace

std::vector<RatingEvent> parse_movielens(std::istream& in, const DatasetProfile& profile,
                                         ParseMode mode, ParseStats* stats) {
    std::vector<RatingEvent> events;
    for_each_record(in, mode, stats, [&](std::string_view sv, std::uint64_t line_no) {
        auto fields = split_char(sv, ':');
        // "a::b::c::d" splits into 7 pieces with empty separators at odd slots
        if (fields.size() != 7 || !fields[1].empty() || !fields[3].empty() || !fields[5].empty())
            throw ParseError(line_no, "expected UserID::MovieID::Rating::Timestamp");
        RatingEvent ev;
        ev.user_id = std::string(fields[0]);
        ev.item_id = std::string(fields[2]);
        if (!parse_double(fields[4], ev.rating))
            throw ParseError(line_no, "bad rating field");
        if (!parse_i64(fields[6], ev.timestamp))
            throw ParseError(line_no, "bad timestamp field");
        check_rating(ev.rating, profile, line_no);
        check_timestamp(ev.timestamp, line_no);
        events.push_back(std::move(ev));
    });
    return events;
}

std::vector<RatingEvent> parse_konect(std::istream& in, const DatasetProfile& profile,
                                      ParseMode mode, ParseStats* stats) {
    std::vector<RatingEvent> events;
    for_each_record(in, mode, stats, [&](std::string_view sv, std::uint64_t line_no) {
        auto fields = split_ws(sv);
        if (fields.size() < 3)
            throw DataError("line " + std::to_string(line_no) +
                            ": missing timestamp column, temporal analysis impossible");
        if (fields.size() > 4) throw ParseError(line_no, "too many columns");
        RatingEvent ev;
        ev.user_id = std::string(fields[0]);
        ev.item_id = std::string(fields[1]);
        if (!parse_i64(fields.back(), ev.timestamp))
            throw ParseError(line_no, "bad timestamp field");
        if (profile.implicit_rating) {
            ev.rating = *profile.implicit_rating;
        } else if (fields.size() == 4) {
            if (!parse_double(fields[2], ev.rating))
                throw ParseError(line_no, "bad weight field");
            check_rating(ev.rating, profile, line_no);
        } else {
            throw DataError("line " + std::to_string(line_no) +
                            ": no rating column and no implicit_rating in profile");
        }
        check_timestamp(ev.timestamp, line_no);
        events.push_back(std::move(ev));
    });
    return events;
}

std::vector<RatingEvent> parse_generic_csv(std::istream& in, const ColumnMap& columns,
                                           const DatasetProfile& profile, ParseMode mode,
                                           ParseStats* stats) {
    std::string header;
    if (!std::getline(in, header)) return {};
    auto names = split_char(trim(header), ',');
    auto find_col = [&](const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw ConfigError("column not found in header: " + name);
    };
    const std::size_t user_col = find_col(columns.user);
    const std::size_t item_col = find_col(columns.item);
    const std::size_t rating_col = find_col(columns.rating);
    const std::size_t time_col = find_col(columns.timestamp);

    std::vector<RatingEvent> events;
    for_each_record(in, mode, stats, [&](std::string_view sv, std::uint64_t line_no) {
        auto fields = split_char(sv, ',');
        if (fields.size() != names.size())
            throw ParseError(line_no, "field count does not match header");
        RatingEvent ev;
        ev.user_id = std::string(fields[user_col]);
        ev.item_id = std::string(fields[item_col]);
        if (!parse_double(fields[rating_col], ev.rating))
            throw ParseError(line_no, "bad rating field");
        if (!parse_i64(fields[time_col], ev.timestamp))
            throw ParseError(line_no, "bad timestamp field");
        check_rating(ev.rating, profile, line_no);
        check_timestamp(ev.timestamp, line_no);
        events.push_back(std::move(ev));
    });
    return events;
}

}  // namespace ratenet
