#include <cyclic/reducibility.hh>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cyclic
{
    namespace
    {
        auto bit(int c) -> ColourSet { return ColourSet{1} << c; }

        auto palette_mask(int palette) -> ColourSet { return ((ColourSet{1} << (palette + 1)) - 1) & ~ColourSet{1}; }

        /// Letters and unbounded faces of a pair, indexed densely.
        struct Layout
        {
            std::string letters;         // in order of first appearance
            std::vector<int> unbounded;  // 1-based reduced-block indices of unbounded faces
            std::vector<ColourSet> unbounded_letter_bits;  // letters listed on each unbounded face (bit = letter index)
            std::vector<std::pair<int, int>> ranges;

            Layout(const ReductionPair & pair, int delta)
            {
                for (auto * block : {&pair.reduced, &pair.original})
                    for (auto & f : block->faces)
                        for (char c : f.letters())
                            if (letters.find(c) == std::string::npos)
                                letters.push_back(c);
                if (letters.size() > 31)
                    throw std::invalid_argument("too many letters");
                for (std::size_t i = 0; i < pair.reduced.faces.size(); ++i) {
                    auto & f = pair.reduced.faces[i];
                    if (f.kind != FaceKind::unbounded_new)
                        continue;
                    unbounded.push_back(static_cast<int>(i) + 1);
                    ColourSet lb = 0;
                    for (char c : f.letters())
                        lb |= ColourSet{1} << letters.find(c);
                    unbounded_letter_bits.push_back(lb);
                    ranges.push_back(hidden_count_range(f, delta));
                }
                if (unbounded.size() > 12)
                    throw std::invalid_argument("too many unbounded faces");
            }

            auto letter_index(char c) const -> int { return static_cast<int>(letters.find(c)); }
        };

        /// Scenario in dense form: colour per letter index, colour set per unbounded face index.
        struct Compact
        {
            std::vector<int> letter_colour;
            std::vector<ColourSet> hidden;
        };

        /// One block with faces resolved against the layout.
        struct CompiledBlock
        {
            int n = 0;
            int palette = 0;
            std::vector<std::vector<int>> face_letters;  // letter indices
            std::vector<int> face_hidden;                // unbounded index or -1
            std::vector<std::vector<int>> face_internals;
            std::vector<std::vector<int>> neighbours;    // internal -> internals sharing a face (0-based)
            std::vector<std::vector<int>> vertex_faces;
            std::vector<std::uint32_t> neighbour_mask;

            CompiledBlock(const ReductionPair & pair, const ConfigurationBlock & block, const Layout & layout, int delta) :
                n(block.n), palette(delta + 2)
            {
                vertex_faces.resize(n);
                neighbours.resize(n);
                for (auto & f : block.faces) {
                    std::vector<int> ls;
                    for (char c : f.letters())
                        ls.push_back(layout.letter_index(c));
                    face_letters.push_back(ls);
                    int ref = -1;
                    if (f.kind != FaceKind::bounded) {
                        int target = f.kind == FaceKind::unbounded_new ? static_cast<int>(&f - block.faces.data()) + 1 : f.ref;
                        if (&block != &pair.reduced && f.kind == FaceKind::unbounded_new)
                            throw std::invalid_argument("range face in the original block");
                        auto it = std::find(layout.unbounded.begin(), layout.unbounded.end(), target);
                        if (it == layout.unbounded.end())
                            throw std::invalid_argument("dangling face reference " + std::to_string(target));
                        ref = static_cast<int>(it - layout.unbounded.begin());
                    }
                    face_hidden.push_back(ref);
                    std::vector<int> in;
                    for (auto v : f.internals())
                        in.push_back(v - 1);
                    int fi = static_cast<int>(face_internals.size());
                    for (auto v : in) {
                        vertex_faces[v].push_back(fi);
                        for (auto w : in)
                            if (w != v && std::find(neighbours[v].begin(), neighbours[v].end(), w) == neighbours[v].end())
                                neighbours[v].push_back(w);
                    }
                    face_internals.push_back(std::move(in));
                }
                if (n > 32)
                    throw std::invalid_argument("more than 32 internal vertices");
                neighbour_mask.assign(n, 0);
                for (int v = 0; v < n; ++v)
                    for (auto w : neighbours[v])
                        neighbour_mask[v] |= std::uint32_t{1} << w;
            }

            /// Colours fixed on face fi by the scenario; nullopt when the scenario itself clashes on that face.
            auto fixed(int fi, const Compact & s) const -> std::optional<ColourSet>
            {
                ColourSet mask = 0;
                for (auto l : face_letters[fi]) {
                    if (mask & bit(s.letter_colour[l]))
                        return std::nullopt;
                    mask |= bit(s.letter_colour[l]);
                }
                if (face_hidden[fi] >= 0) {
                    auto h = s.hidden[face_hidden[fi]];
                    if (mask & h)
                        return std::nullopt;
                    mask |= h;
                }
                return mask;
            }

            auto extends(const Compact & s) const -> bool
            {
                Domains available;
                available.fill(palette_mask(palette));
                for (std::size_t fi = 0; fi < face_internals.size(); ++fi) {
                    auto m = fixed(static_cast<int>(fi), s);
                    if (! m)
                        return false;
                    for (auto v : face_internals[fi])
                        available[v] &= ~*m;
                }
                return search(available, n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
            }

            using Domains = std::array<ColourSet, 32>;

            /// Colours uncoloured vertices (bit set in `open`) with forward checking, most constrained first.
            auto search(const Domains & available, std::uint32_t open) const -> bool
            {
                if (! open)
                    return true;
                int best = -1, best_count = 64;
                for (auto o = open; o; o &= o - 1) {
                    int v = std::countr_zero(o);
                    int c = std::popcount(available[v]);
                    if (c < best_count) {
                        best = v;
                        best_count = c;
                        if (c <= 1)
                            break;
                    }
                }
                if (best_count == 0)
                    return false;
                auto rest = open & ~(std::uint32_t{1} << best);
                for (ColourSet options = available[best]; options; options &= options - 1) {
                    ColourSet c = options & -options;
                    Domains next = available;
                    bool dead = false;
                    for (auto o = neighbour_mask[best] & rest; o; o &= o - 1) {
                        int w = std::countr_zero(o);
                        next[w] &= ~c;
                        if (! next[w]) {
                            dead = true;
                            break;
                        }
                    }
                    if (! dead && search(next, rest))
                        return true;
                }
                return false;
            }
        };

        auto to_compact(const Layout & layout, const BoundaryScenario & s) -> Compact
        {
            Compact c;
            for (char l : layout.letters) {
                auto it = s.letter_colours.find(l);
                if (it == s.letter_colours.end())
                    throw std::invalid_argument(std::string("scenario has no colour for letter ") + l);
                if (it->second < 1 || it->second > s.palette())
                    throw std::invalid_argument("letter colour outside the palette");
                c.letter_colour.push_back(it->second);
            }
            for (auto f : layout.unbounded) {
                auto it = s.hidden.find(f);
                if (it == s.hidden.end())
                    throw std::invalid_argument("scenario has no hidden set for face " + std::to_string(f));
                if (it->second.colours & ~palette_mask(s.palette()))
                    throw std::invalid_argument("hidden colour outside the palette");
                c.hidden.push_back(it->second.colours);
            }
            return c;
        }

        auto from_compact(const Layout & layout, const Compact & c, int delta) -> BoundaryScenario
        {
            BoundaryScenario s;
            s.delta = delta;
            for (std::size_t i = 0; i < layout.letters.size(); ++i)
                s.letter_colours[layout.letters[i]] = c.letter_colour[i];
            for (std::size_t u = 0; u < layout.unbounded.size(); ++u)
                s.hidden[layout.unbounded[u]] = HiddenSet{std::popcount(c.hidden[u]), c.hidden[u]};
            return s;
        }

        /// Orbit enumeration: a partition of the letters into colour classes, a set of unbounded faces
        /// hiding each letter colour, and a multiset of face-signatures for the remaining colours.
        struct Enumerator
        {
            const Layout & layout;
            int palette;
            const std::function<bool(const Compact &)> & visit;

            Enumerator(const Layout & l, int p, const std::function<bool(const Compact &)> & v) :
                layout(l), palette(p), visit(v)
            {
            }

            Compact current;
            int letters_n = 0, faces_n = 0;
            std::vector<int> cls;              // letter -> class
            int classes = 0;
            std::vector<ColourSet> class_sig;  // class -> set of unbounded faces hiding that colour
            std::vector<int> face_total;
            std::vector<ColourSet> signature_faces;  // free colour signatures, ascending
            std::vector<int> signature_count;
            bool stopped = false;
            long long visited = 0;

            auto run() -> void
            {
                letters_n = static_cast<int>(layout.letters.size());
                faces_n = static_cast<int>(layout.unbounded.size());
                cls.assign(letters_n, 0);
                for (ColourSet s = 1; s < (ColourSet{1} << faces_n); ++s)
                    signature_faces.push_back(s);
                signature_count.assign(signature_faces.size(), 0);
                partition(0);
            }

            auto partition(int i) -> void
            {
                if (stopped)
                    return;
                if (i == letters_n) {
                    class_sig.assign(classes, 0);
                    face_total.assign(faces_n, 0);
                    assign_class_signatures(0);
                    return;
                }
                for (int c = 0; c <= classes && c < palette; ++c) {
                    cls[i] = c;
                    bool fresh = c == classes;
                    if (fresh)
                        ++classes;
                    partition(i + 1);
                    if (fresh)
                        --classes;
                }
            }

            auto assign_class_signatures(int j) -> void
            {
                if (stopped)
                    return;
                if (j == classes) {
                    distribute(0, palette - classes);
                    return;
                }
                ColourSet letters_of_class = 0;
                for (int l = 0; l < letters_n; ++l)
                    if (cls[l] == j)
                        letters_of_class |= ColourSet{1} << l;
                ColourSet allowed = 0;
                for (int u = 0; u < faces_n; ++u)
                    if (! (layout.unbounded_letter_bits[u] & letters_of_class))
                        allowed |= ColourSet{1} << u;
                // every subset of allowed, ascending
                for (ColourSet sub = 0;; sub = (sub - allowed) & allowed) {
                    for (int u = 0; u < faces_n; ++u)
                        if (sub >> u & 1)
                            ++face_total[u];
                    bool ok = true;
                    for (int u = 0; u < faces_n; ++u)
                        if (face_total[u] > layout.ranges[u].second)
                            ok = false;
                    if (ok) {
                        class_sig[j] = sub;
                        assign_class_signatures(j + 1);
                    }
                    for (int u = 0; u < faces_n; ++u)
                        if (sub >> u & 1)
                            --face_total[u];
                    if (stopped || ((sub - allowed) & allowed) == 0)
                        break;
                }
            }

            auto distribute(std::size_t si, int free_left) -> void
            {
                if (stopped)
                    return;
                if (si == signature_faces.size()) {
                    for (int u = 0; u < faces_n; ++u)
                        if (face_total[u] < layout.ranges[u].first)
                            return;
                    emit();
                    return;
                }
                // faces that no later signature touches must already be satisfiable
                ColourSet later = 0;
                for (std::size_t t = si; t < signature_faces.size(); ++t)
                    later |= signature_faces[t];
                for (int u = 0; u < faces_n; ++u) {
                    if ((later >> u & 1) == 0 && face_total[u] < layout.ranges[u].first)
                        return;
                    if ((later >> u & 1) && face_total[u] + free_left < layout.ranges[u].first)
                        return;
                }
                ColourSet sig = signature_faces[si];
                int cap = free_left;
                for (int u = 0; u < faces_n; ++u)
                    if (sig >> u & 1)
                        cap = std::min(cap, layout.ranges[u].second - face_total[u]);
                for (int count = 0; count <= cap; ++count) {
                    signature_count[si] = count;
                    for (int u = 0; u < faces_n; ++u)
                        if (sig >> u & 1)
                            face_total[u] += count;
                    distribute(si + 1, free_left - count);
                    for (int u = 0; u < faces_n; ++u)
                        if (sig >> u & 1)
                            face_total[u] -= count;
                    if (stopped)
                        break;
                }
                signature_count[si] = 0;
            }

            auto emit() -> void
            {
                auto & c = current;
                c.letter_colour.resize(letters_n);
                for (int l = 0; l < letters_n; ++l)
                    c.letter_colour[l] = cls[l] + 1;
                c.hidden.assign(faces_n, 0);
                for (int j = 0; j < classes; ++j)
                    for (int u = 0; u < faces_n; ++u)
                        if (class_sig[j] >> u & 1)
                            c.hidden[u] |= bit(j + 1);
                int next = classes + 1;
                for (std::size_t si = 0; si < signature_faces.size(); ++si)
                    for (int k = 0; k < signature_count[si]; ++k, ++next)
                        for (int u = 0; u < faces_n; ++u)
                            if (signature_faces[si] >> u & 1)
                                c.hidden[u] |= bit(next);
                ++visited;
                if (! visit(c))
                    stopped = true;
            }
        };

        auto enumerate_compact(const Layout & layout, int palette, const std::function<bool(const Compact &)> & visit) -> long long
        {
            Enumerator e{layout, palette, visit};
            e.run();
            return e.visited;
        }
    }

    auto format_scenario(const BoundaryScenario & s) -> std::string
    {
        std::ostringstream out;
        out << "palette " << s.palette() << "; letters";
        for (auto & [l, c] : s.letter_colours)
            out << ' ' << l << '=' << c;
        for (auto & [f, h] : s.hidden) {
            out << "; face " << f << " hidden " << h.count << " {";
            bool first = true;
            for (int c = 1; c <= s.palette(); ++c)
                if (h.colours & bit(c)) {
                    out << (first ? "" : ",") << c;
                    first = false;
                }
            out << '}';
        }
        return out.str();
    }

    auto face_color_footprint(const ReductionPair & pair, const ConfigurationBlock & block, const BoundaryScenario & scenario,
        const FaceSpec & face, const std::map<int, int> & partial) -> ColourSet
    {
        ColourSet mask = 0;
        for (char l : face.letters())
            if (auto it = scenario.letter_colours.find(l); it != scenario.letter_colours.end())
                mask |= bit(it->second);
        int ref = 0;
        if (face.kind == FaceKind::unbounded_new)
            ref = static_cast<int>(&face - block.faces.data()) + 1;
        else if (face.kind == FaceKind::unbounded_orig)
            ref = face.ref;
        if (&block != &pair.reduced && face.kind == FaceKind::unbounded_new)
            ref = 0;
        if (ref)
            if (auto it = scenario.hidden.find(ref); it != scenario.hidden.end())
                mask |= it->second.colours;
        for (auto v : face.internals())
            if (auto it = partial.find(v); it != partial.end() && it->second > 0)
                mask |= bit(it->second);
        return mask;
    }

    auto extends(const ReductionPair & pair, const ConfigurationBlock & block, const BoundaryScenario & scenario) -> bool
    {
        if (scenario.palette() > max_palette)
            throw std::invalid_argument("palette too large");
        Layout layout(pair, scenario.delta);
        CompiledBlock compiled(pair, block, layout, scenario.delta);
        return compiled.extends(to_compact(layout, scenario));
    }

    auto enumerate_scenarios(const ReductionPair & pair, int delta, const std::function<bool(const BoundaryScenario &)> & visit)
        -> long long
    {
        if (delta + 2 > max_palette)
            throw std::invalid_argument("palette too large");
        Layout layout(pair, delta);
        return enumerate_compact(layout, delta + 2, [&](const Compact & c) { return visit(from_compact(layout, c, delta)); });
    }

    auto check_reducible(const ReductionPair & pair, int delta, const ReducibilityOptions & options) -> Verdict
    {
        if (delta + 2 > max_palette)
            throw std::invalid_argument("palette too large");
        Layout layout(pair, delta);
        CompiledBlock reduced(pair, pair.reduced, layout, delta), original(pair, pair.original, layout, delta);
        int workers = std::max(1, options.workers);

        std::mutex lock;
        Verdict verdict;
        std::optional<Compact> witness;
        std::atomic<long long> first_failure{-1};

        auto worker = [&](int w) {
            long long index = -1, extendable = 0, checks = 0, seen = 0;
            enumerate_compact(layout, delta + 2, [&](const Compact & c) {
                ++index;
                if (index < options.start_at || index % workers != w)
                    return true;
                auto ff = first_failure.load();
                if (ff >= 0 && index > ff)
                    return false;
                ++seen;
                if (w == 0 && options.progress && options.progress_interval > 0 && index % options.progress_interval == 0)
                    options.progress(index);
                if (! reduced.extends(c))
                    return true;
                ++extendable;
                ++checks;
                if (original.extends(c))
                    return true;
                std::lock_guard guard(lock);
                if (first_failure.load() < 0 || index < first_failure.load()) {
                    first_failure = index;
                    witness = c;
                }
                return false;
            });
            std::lock_guard guard(lock);
            verdict.scenarios += seen;
            verdict.reduced_extendable += extendable;
            verdict.original_checks += checks;
        };

        if (workers == 1)
            worker(0);
        else {
            std::vector<std::thread> threads;
            for (int w = 0; w < workers; ++w)
                threads.emplace_back(worker, w);
            for (auto & t : threads)
                t.join();
        }

        if (witness) {
            verdict.reducible = false;
            verdict.witness = from_compact(layout, *witness, delta);
            verdict.witness_index = first_failure.load();
        }
        return verdict;
    }
}
