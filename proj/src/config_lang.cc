#include <cyclic/config_lang.hh>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace cyclic
{
    auto FaceSpec::letters() const -> std::string
    {
        std::string result;
        for (auto & t : vertices)
            if (t.kind == VertexToken::Kind::letter)
                result.push_back(t.letter);
        return result;
    }

    auto FaceSpec::internals() const -> std::vector<int>
    {
        std::vector<int> result;
        for (auto & t : vertices)
            if (t.kind == VertexToken::Kind::internal)
                result.push_back(t.id);
        return result;
    }

    namespace
    {
        struct LineReader
        {
            std::istringstream in;
            int line_no = 0;

            auto next(std::vector<std::string> & fields) -> bool
            {
                std::string line;
                while (std::getline(in, line)) {
                    ++line_no;
                    std::istringstream ls(line);
                    fields.clear();
                    std::string f;
                    while (ls >> f)
                        fields.push_back(f);
                    if (! fields.empty())
                        return true;
                }
                return false;
            }
        };

        auto parse_int(const std::string & s, int line, const char * what) -> int
        {
            if (s.empty() || ! std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
                throw ConfigParseError(line, std::string("expected ") + what + ", found '" + s + "'");
            if (s.size() > 6)
                throw ConfigParseError(line, std::string(what) + " out of range");
            return std::stoi(s);
        }

        auto parse_face(const std::vector<std::string> & fields, bool first_block, int n, int line) -> FaceSpec
        {
            if (fields.size() < 2 || fields.size() > 3)
                throw ConfigParseError(line, "face line needs a marker, a letter field and an internal-vertex list");
            FaceSpec face;
            face.line = line;

            const auto & marker = fields[0];
            if (auto dash = marker.find('-'); dash != std::string::npos) {
                if (! first_block)
                    throw ConfigParseError(line, "size ranges are only allowed in the first block");
                face.kind = FaceKind::unbounded_new;
                face.a1 = parse_int(marker.substr(0, dash), line, "range start");
                face.a2 = parse_int(marker.substr(dash + 1), line, "range end");
            }
            else {
                int value = parse_int(marker, line, "face marker");
                if (value == 0)
                    face.kind = FaceKind::bounded;
                else if (first_block) {
                    face.kind = FaceKind::unbounded_new;
                    face.a1 = face.a2 = value;
                }
                else {
                    face.kind = FaceKind::unbounded_orig;
                    face.ref = value;
                }
            }

            const auto & letters = fields[1];
            if (letters != "-") {
                std::set<char> seen;
                for (char c : letters) {
                    if (c < 'a' || c > 'z')
                        throw ConfigParseError(line, std::string("bad letter '") + c + "'");
                    if (! seen.insert(c).second)
                        throw ConfigParseError(line, std::string("letter '") + c + "' repeated");
                    face.vertices.push_back(VertexToken::letter_vertex(c));
                }
            }

            if (fields.size() == 3 && fields[2] != "-") {
                std::set<int> seen;
                std::istringstream ids(fields[2]);
                std::string id;
                while (std::getline(ids, id, ',')) {
                    int v = parse_int(id, line, "internal vertex id");
                    if (v < 1 || v > n)
                        throw ConfigParseError(line, "internal vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
                    if (! seen.insert(v).second)
                        throw ConfigParseError(line, "internal vertex " + std::to_string(v) + " repeated");
                    face.vertices.push_back(VertexToken::internal_vertex(v));
                }
                if (fields[2].back() == ',')
                    throw ConfigParseError(line, "trailing comma");
            }
            return face;
        }

        auto parse_block(LineReader & reader, bool first_block) -> ConfigurationBlock
        {
            std::vector<std::string> fields;
            if (! reader.next(fields))
                throw ConfigParseError(reader.line_no, first_block ? "missing first block" : "missing second block");
            if (fields.size() != 2)
                throw ConfigParseError(reader.line_no, "block header must be 'm n'");
            ConfigurationBlock block;
            block.line = reader.line_no;
            block.m = parse_int(fields[0], reader.line_no, "face count m");
            block.n = parse_int(fields[1], reader.line_no, "internal vertex count n");
            for (int i = 0; i < block.m; ++i) {
                if (! reader.next(fields))
                    throw ConfigParseError(reader.line_no, "expected " + std::to_string(block.m) + " face lines, found " + std::to_string(i));
                block.faces.push_back(parse_face(fields, first_block, block.n, reader.line_no));
            }
            return block;
        }

        auto format_face(const FaceSpec & f) -> std::string
        {
            std::string out;
            switch (f.kind) {
            case FaceKind::bounded: out = "0"; break;
            case FaceKind::unbounded_new: out = std::to_string(f.a1) + "-" + std::to_string(f.a2); break;
            case FaceKind::unbounded_orig: out = std::to_string(f.ref); break;
            }
            auto letters = f.letters();
            out += " " + (letters.empty() ? std::string("-") : letters) + " ";
            auto ids = f.internals();
            if (ids.empty())
                out += "-";
            for (std::size_t i = 0; i < ids.size(); ++i)
                out += (i ? "," : "") + std::to_string(ids[i]);
            return out;
        }
    }

    auto parse_reduction_file(std::string_view text) -> ReductionPair
    {
        LineReader reader{std::istringstream(std::string(text))};
        ReductionPair pair;
        pair.reduced = parse_block(reader, true);
        pair.original = parse_block(reader, false);
        std::vector<std::string> fields;
        if (reader.next(fields))
            throw ConfigParseError(reader.line_no, "trailing content after the second block");
        return pair;
    }

    auto format_reduction_pair(const ReductionPair & pair) -> std::string
    {
        std::string out;
        for (auto * block : {&pair.reduced, &pair.original}) {
            out += std::to_string(block->m) + " " + std::to_string(block->n) + "\n";
            for (auto & f : block->faces)
                out += format_face(f) + "\n";
        }
        return out;
    }

    auto hidden_count_range(const FaceSpec & face, int delta) -> std::pair<int, int>
    {
        if (face.kind != FaceKind::unbounded_new)
            throw std::invalid_argument("hidden_count_range needs a first-block unbounded face");
        int kmin = delta + 2 - face.a2, kmax = delta + 2 - face.a1;
        if (kmin < 0)
            throw std::domain_error("negative hidden vertex count for range " + std::to_string(face.a1) + "-" + std::to_string(face.a2));
        return {kmin, kmax};
    }

    auto hidden_count_range(const ReductionPair & pair, const FaceSpec & face, int delta) -> std::pair<int, int>
    {
        if (face.kind == FaceKind::unbounded_orig) {
            if (face.ref < 1 || face.ref > static_cast<int>(pair.reduced.faces.size()))
                throw std::invalid_argument("dangling face reference");
            return hidden_count_range(pair.reduced.faces[face.ref - 1], delta);
        }
        return hidden_count_range(face, delta);
    }

    auto validate(const ReductionPair & pair, int delta) -> std::vector<std::string>
    {
        std::vector<std::string> diagnostics;
        auto at = [](int line, const std::string & what) { return "line " + std::to_string(line) + ": " + what; };

        for (auto * block : {&pair.reduced, &pair.original}) {
            const char * name = block == &pair.reduced ? "reduced block" : "original block";
            if (static_cast<int>(block->faces.size()) != block->m)
                diagnostics.push_back(at(block->line, std::string(name) + ": face count does not match m"));
            std::vector<bool> used(block->n + 1, false);
            for (auto & f : block->faces) {
                for (auto v : f.internals())
                    if (v >= 1 && v <= block->n)
                        used[v] = true;
                if (f.kind == FaceKind::unbounded_new) {
                    if (f.a1 > f.a2)
                        diagnostics.push_back(at(f.line, "range start exceeds range end"));
                    else if (delta + 2 - f.a2 < 0)
                        diagnostics.push_back(at(f.line, "negative hidden vertex count for this maximum face size"));
                }
                if (f.kind == FaceKind::unbounded_orig) {
                    bool ok = f.ref >= 1 && f.ref <= static_cast<int>(pair.reduced.faces.size()) &&
                        pair.reduced.faces[f.ref - 1].kind == FaceKind::unbounded_new;
                    if (! ok)
                        diagnostics.push_back(at(f.line, "dangling face reference " + std::to_string(f.ref)));
                }
                if (f.vertices.empty())
                    diagnostics.push_back(at(f.line, "face lists no vertices"));
            }
            for (int v = 1; v <= block->n; ++v)
                if (! used[v])
                    diagnostics.push_back(at(block->line, std::string(name) + ": unconstrained internal vertex " + std::to_string(v)));
        }

        if (pair.original.n < pair.reduced.n)
            diagnostics.push_back(at(pair.original.line, "original block has fewer internal vertices than the reduced block"));

        auto letter_set = [](const ConfigurationBlock & b) {
            std::set<char> s;
            for (auto & f : b.faces)
                for (char c : f.letters())
                    s.insert(c);
            return s;
        };
        if (letter_set(pair.reduced) != letter_set(pair.original))
            diagnostics.push_back(at(pair.original.line, "letter sets of the two blocks differ"));

        return diagnostics;
    }
}
