#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::path::{Path, PathBuf};

use rand::Rng;
use transrel::model::{AlignedUnit, Corpus, Head, LingToken, RelationLabel, SentencePair};

pub fn demo_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/demo")
}

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}

/// A scratch copy of the demo project. Returns the temp dir guard and the
/// manifest path inside it.
pub fn demo_copy() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&demo_dir(), dir.path());
    let manifest = dir.path().join("project.toml");
    (dir, manifest)
}

/// Writes a minimal two-corpus project from in-memory corpora. Both corpora
/// must share source tokens for loading to succeed. Alignments are derived
/// from the units (every src x tgt pair of a two-sided unit).
pub fn write_project(
    dir: &Path,
    reference: &Corpus,
    candidate: &Corpus,
    genres: &[(&str, &str)],
) -> PathBuf {
    let write_corpus = |sub: &str, c: &Corpus| {
        let d = dir.join(sub);
        std::fs::create_dir_all(&d).unwrap();
        let src: Vec<Vec<String>> = c.sentences.iter().map(|s| s.src_tokens.clone()).collect();
        let tgt: Vec<Vec<String>> = c.sentences.iter().map(|s| s.tgt_tokens.clone()).collect();
        std::fs::write(
            d.join("source.txt"),
            transrel::ingest::serialize_tokenized(&src),
        )
        .unwrap();
        std::fs::write(
            d.join("target.txt"),
            transrel::ingest::serialize_tokenized(&tgt),
        )
        .unwrap();
        let edges = transrel::ingest::AlignmentEdgeList {
            sentences: c
                .sentences
                .iter()
                .map(|s| {
                    s.units
                        .iter()
                        .flat_map(|u| {
                            u.src
                                .iter()
                                .flat_map(move |&i| u.tgt.iter().map(move |&j| (i, j)))
                        })
                        .collect()
                })
                .collect(),
        };
        std::fs::write(
            d.join("corpus.aln"),
            transrel::ingest::serialize_alignment(&edges),
        )
        .unwrap();
        std::fs::write(
            d.join("annotations.jsonl"),
            transrel::ingest::serialize_annotations(c),
        )
        .unwrap();
    };
    write_corpus("ref", reference);
    write_corpus("cand", candidate);
    let mut manifest = format!(
        "project = \"synthetic\"\n\n[reference]\nname = \"{}\"\nsource = \"ref/source.txt\"\ntarget = \"ref/target.txt\"\nalignment = \"ref/corpus.aln\"\nannotations = \"ref/annotations.jsonl\"\n\n[candidate]\nname = \"{}\"\nsource = \"cand/source.txt\"\ntarget = \"cand/target.txt\"\nalignment = \"cand/corpus.aln\"\nannotations = \"cand/annotations.jsonl\"\n",
        reference.name, candidate.name
    );
    if !genres.is_empty() {
        manifest.push_str("\n[genres]\n");
        for (g, r) in genres {
            manifest.push_str(&format!("{} = \"{}\"\n", g, r));
        }
    }
    let path = dir.join("project.toml");
    std::fs::write(&path, manifest).unwrap();
    path
}

/// A sentence of `n` source and `n` target tokens with one 1:1 unit per
/// position carrying the given labels. Labels without a side are given
/// their required empty side.
pub fn labeled_sentence(id: &str, genre: &str, labels: &[RelationLabel]) -> SentencePair {
    let toks: Vec<String> = (0..labels.len()).map(|i| format!("w{}", i)).collect();
    let mut tgt = Vec::new();
    let mut units = Vec::new();
    for (i, r) in labels.iter().enumerate() {
        match r {
            RelationLabel::UnalignedReduction => units.push(AlignedUnit::new([i], [], *r)),
            _ => {
                units.push(AlignedUnit::new([i], [tgt.len()], *r));
                tgt.push(format!("t{}", i));
            }
        }
    }
    if tgt.is_empty() {
        tgt.push("t".into());
        units.push(AlignedUnit::new(
            [],
            [0],
            RelationLabel::UnalignedExplicitation,
        ));
    }
    SentencePair::new(id, genre, toks, tgt).with_units(units)
}

/// Builds a corpus whose unit multiset has exactly the given count per
/// relation, split into sentences of at most `per_sentence` units. Genre of
/// each sentence comes from `genre_of(sentence_index)`.
pub fn corpus_with_counts(
    name: &str,
    counts: &[(RelationLabel, u64)],
    per_sentence: usize,
    genre_of: impl Fn(usize) -> String,
) -> Corpus {
    let mut labels: Vec<RelationLabel> = Vec::new();
    for (r, n) in counts {
        labels.extend(std::iter::repeat_n(*r, *n as usize));
    }
    let sentences = labels
        .chunks(per_sentence)
        .enumerate()
        .map(|(i, chunk)| unit_sentence(&format!("s{}", i + 1), &genre_of(i), chunk))
        .collect();
    Corpus::new(name, sentences)
}

/// One unit per label, each unit with its own tokens; explicitation units
/// only get a target token and reduction units only a source token.
pub fn unit_sentence(id: &str, genre: &str, labels: &[RelationLabel]) -> SentencePair {
    let (mut src, mut tgt, mut units) = (Vec::new(), Vec::new(), Vec::new());
    for r in labels {
        let s: Vec<usize> = if *r == RelationLabel::UnalignedExplicitation {
            vec![]
        } else {
            src.push(format!("w{}", src.len()));
            vec![src.len() - 1]
        };
        let t: Vec<usize> = if *r == RelationLabel::UnalignedReduction {
            vec![]
        } else {
            tgt.push(format!("t{}", tgt.len()));
            vec![tgt.len() - 1]
        };
        units.push(AlignedUnit::new(s, t, *r));
    }
    if src.is_empty() {
        src.push("w".into());
        units.push(AlignedUnit::new([0], [], RelationLabel::UnalignedReduction));
    }
    if tgt.is_empty() {
        tgt.push("t".into());
        units.push(AlignedUnit::new(
            [],
            [0],
            RelationLabel::UnalignedExplicitation,
        ));
    }
    SentencePair::new(id, genre, src, tgt).with_units(units)
}

/// A random complete-valid sentence: tokens on each side are shuffled into
/// groups, groups are paired or left unaligned.
pub fn random_complete_sentence(rng: &mut impl Rng, id: &str) -> SentencePair {
    let n_src = rng.gen_range(1..12);
    let n_tgt = rng.gen_range(1..12);
    let mut src: Vec<usize> = (0..n_src).collect();
    let mut tgt: Vec<usize> = (0..n_tgt).collect();
    shuffle(rng, &mut src);
    shuffle(rng, &mut tgt);
    let groups = |rng: &mut dyn rand::RngCore, v: Vec<usize>| {
        let mut out: Vec<BTreeSet<usize>> = Vec::new();
        let mut it = v.into_iter().peekable();
        while it.peek().is_some() {
            let k = rng.gen_range(1..4);
            out.push(it.by_ref().take(k).collect());
        }
        out
    };
    let mut sg = groups(rng, src);
    let mut tg = groups(rng, tgt);
    let mut units = Vec::new();
    let two_sided: Vec<RelationLabel> = RelationLabel::ALL
        .iter()
        .copied()
        .filter(|r| {
            !matches!(
                r,
                RelationLabel::UnalignedExplicitation | RelationLabel::UnalignedReduction
            )
        })
        .collect();
    while !sg.is_empty() || !tg.is_empty() {
        let choice = rng.gen_range(0..4);
        match (sg.is_empty(), tg.is_empty(), choice) {
            (false, false, 0..=1) => {
                let r = two_sided[rng.gen_range(0..two_sided.len())];
                units.push(AlignedUnit::new(sg.pop().unwrap(), tg.pop().unwrap(), r));
            }
            (false, _, _) if tg.is_empty() || choice == 2 => {
                units.push(AlignedUnit::new(
                    sg.pop().unwrap(),
                    [],
                    RelationLabel::UnalignedReduction,
                ));
            }
            _ => {
                units.push(AlignedUnit::new(
                    [],
                    tg.pop().unwrap(),
                    RelationLabel::UnalignedExplicitation,
                ));
            }
        }
    }
    let toks = |n: usize, p: &str| (0..n).map(|i| format!("{}{}", p, i)).collect::<Vec<_>>();
    SentencePair::new(id, "news", toks(n_src, "w"), toks(n_tgt, "t")).with_units(units)
}

pub fn shuffle<T>(rng: &mut impl Rng, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
}

/// Full insert/delete/substitute Levenshtein distance by dynamic
/// programming, as an oracle for the substitution-only distance.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, x) in a.iter().enumerate() {
        let mut cur = vec![i + 1];
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur.push(sub.min(prev[j + 1] + 1).min(cur[j] + 1));
        }
        prev = cur;
    }
    prev[b.len()]
}

/// Connected components of the bipartite edge graph by breadth-first
/// search, as `(src set, tgt set)` sorted by smallest source index.
pub fn bfs_components(edges: &[(usize, usize)]) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let mut seen: BTreeSet<(bool, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for &(s0, _) in edges {
        if seen.contains(&(false, s0)) {
            continue;
        }
        let (mut src, mut tgt) = (BTreeSet::new(), BTreeSet::new());
        let mut queue = VecDeque::from([(false, s0)]);
        seen.insert((false, s0));
        while let Some((is_tgt, n)) = queue.pop_front() {
            if is_tgt {
                tgt.insert(n);
            } else {
                src.insert(n);
            }
            for &(s, t) in edges {
                let next = match (is_tgt, s == n, t == n) {
                    (false, true, _) => (true, t),
                    (true, _, true) => (false, s),
                    _ => continue,
                };
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        out.push((src, tgt));
    }
    out.sort_by_key(|(s, _)| *s.iter().next().unwrap());
    out
}

/// Random dependency tree over `n` tokens: token 0..n in random order, each
/// attaches to an earlier one; the first is ROOT.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Vec<LingToken> {
    const POS: [&str; 8] = ["NOUN", "VERB", "ADJ", "ADP", "DET", "PRON", "PART", "ADV"];
    let mut order: Vec<usize> = (0..n).collect();
    shuffle(rng, &mut order);
    let mut heads = vec![Head::Root; n];
    for k in 1..n {
        heads[order[k]] = Head::Index(order[rng.gen_range(0..k)]);
    }
    heads
        .into_iter()
        .map(|h| LingToken::new(POS[rng.gen_range(0..POS.len())], h, "dep"))
        .collect()
}

/// Random alignment for an `n_src` x `n_tgt` sentence where each token is
/// withheld (left without edges) with probability about one in four.
pub fn random_edges(rng: &mut impl Rng, n_src: usize, n_tgt: usize) -> Vec<(usize, usize)> {
    let src_on: Vec<usize> = (0..n_src).filter(|_| rng.gen_range(0..4) != 0).collect();
    let tgt_on: Vec<usize> = (0..n_tgt).filter(|_| rng.gen_range(0..4) != 0).collect();
    if src_on.is_empty() || tgt_on.is_empty() {
        return Vec::new();
    }
    let mut edges = BTreeSet::new();
    for &s in &src_on {
        edges.insert((s, tgt_on[rng.gen_range(0..tgt_on.len())]));
    }
    for &t in &tgt_on {
        edges.insert((src_on[rng.gen_range(0..src_on.len())], t));
    }
    for _ in 0..rng.gen_range(0..3) {
        edges.insert((
            src_on[rng.gen_range(0..src_on.len())],
            tgt_on[rng.gen_range(0..tgt_on.len())],
        ));
    }
    edges.into_iter().collect()
}

/// Tokens without any edge on each side, by scanning every index against
/// every edge.
pub fn edgeless_tokens(
    edges: &[(usize, usize)],
    n_src: usize,
    n_tgt: usize,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let src = (0..n_src)
        .filter(|i| !edges.iter().any(|(s, _)| s == i))
        .collect();
    let tgt = (0..n_tgt)
        .filter(|j| !edges.iter().any(|(_, t)| t == j))
        .collect();
    (src, tgt)
}

/// Head candidates of a group by enumerating every ordered token pair: a
/// token is a candidate when no other group token is its parent.
pub fn head_candidates(group: &BTreeSet<usize>, ling: &[LingToken]) -> Vec<usize> {
    group
        .iter()
        .copied()
        .filter(|&i| !group.iter().any(|&j| ling[i].head == Head::Index(j)))
        .collect()
}

/// The token plus all of its descendants.
pub fn subtree(root: usize, ling: &[LingToken]) -> BTreeSet<usize> {
    let mut out = BTreeSet::from([root]);
    loop {
        let before = out.len();
        for (i, t) in ling.iter().enumerate() {
            if let Head::Index(h) = t.head {
                if out.contains(&h) {
                    out.insert(i);
                }
            }
        }
        if out.len() == before {
            return out;
        }
    }
}
