mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use transrel::metrics::{
    discrepancy_raw, literal_split_by_genre, relation_edit_distance, token_counts,
    token_literal_stats, DiscrepancyPolicy,
};
use transrel::model::{
    project_source_relations, validate, Corpus, RelationLabel, SentencePair, ValidationMode,
};
use transrel::preannotate::{group_edges, preannotate_sentence};
use transrel::subcat::{
    group_head_pos, profile_unaligned, subcategory_profile, transposition_transfer, ProfileFacet,
    Resources, UnalignedSide, PROFILED_RELATIONS,
};
use transrel::table::Cell;
use transrel::AlignedUnit;

fn label() -> impl Strategy<Value = RelationLabel> {
    proptest::sample::select(RelationLabel::ALL.to_vec())
}

fn sentence(seed: u64) -> SentencePair {
    common::random_complete_sentence(&mut StdRng::seed_from_u64(seed), "s1")
}

fn with_ling(mut pair: SentencePair, rng: &mut StdRng) -> SentencePair {
    pair.src_ling = Some(common::random_tree(rng, pair.src_tokens.len()));
    pair.tgt_ling = Some(common::random_tree(rng, pair.tgt_tokens.len()));
    pair
}

fn random_corpus(seed: u64, n: usize) -> Corpus {
    let mut rng = StdRng::seed_from_u64(seed);
    let genres = ["news", "education", "subtitles"];
    let sentences = (0..n)
        .map(|i| {
            let mut s = common::random_complete_sentence(&mut rng, &format!("s{}", i + 1));
            s.genre = genres[rng.gen_range(0..genres.len())].into();
            with_ling(s, &mut rng)
        })
        .collect();
    Corpus::new("C", sentences)
}

fn count(cell: Option<&Cell>) -> u64 {
    cell.and_then(Cell::as_count).unwrap()
}

proptest! {
    #[test]
    fn complete_sentences_conserve_tokens(seed in any::<u64>()) {
        let pair = sentence(seed);
        prop_assert!(validate(&pair, ValidationMode::Complete).is_empty());
        prop_assert!(validate(&pair, ValidationMode::Draft).is_empty());
        let src: usize = pair.units.iter().map(|u| u.src.len()).sum();
        let tgt: usize = pair.units.iter().map(|u| u.tgt.len()).sum();
        prop_assert_eq!(src, pair.src_tokens.len());
        prop_assert_eq!(tgt, pair.tgt_tokens.len());
        let projected = project_source_relations(&pair).unwrap();
        prop_assert_eq!(projected.len(), pair.src_tokens.len());
        prop_assert_eq!(&projected, &project_source_relations(&pair.clone()).unwrap());
    }

    #[test]
    fn removing_any_index_is_rejected(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let pair = sentence(seed);
        let slots: Vec<(usize, bool, usize)> = pair
            .units
            .iter()
            .enumerate()
            .flat_map(|(k, u)| {
                u.src.iter().map(move |&i| (k, false, i)).chain(u.tgt.iter().map(move |&j| (k, true, j)))
            })
            .collect();
        let (k, is_tgt, i) = slots[pick.index(slots.len())];
        let mut broken = pair.clone();
        if is_tgt {
            broken.units[k].tgt.remove(&i);
        } else {
            broken.units[k].src.remove(&i);
        }
        prop_assert!(!validate(&broken, ValidationMode::Complete).is_empty());
    }

    #[test]
    fn edit_distance_is_a_metric(
        triple in (1usize..30).prop_flat_map(|n| (
            proptest::collection::vec(label(), n),
            proptest::collection::vec(label(), n),
            proptest::collection::vec(label(), n),
        ))
    ) {
        let (x, y, z) = triple;
        let d = |a: &[RelationLabel], b: &[RelationLabel]| relation_edit_distance(a, b).unwrap();
        prop_assert_eq!(d(&x, &x), 0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        let mismatches = x.iter().zip(&y).filter(|(a, b)| a != b).count();
        prop_assert_eq!(d(&x, &y), mismatches);
        // Insertions and deletions can only shorten the edit script.
        prop_assert!(common::levenshtein(&x, &y) <= d(&x, &y));
    }

    #[test]
    fn discrepancy_policies_agree(c in 0.01f64..100.0, r in 0.01f64..100.0) {
        let d_ref = discrepancy_raw(c, r, DiscrepancyPolicy::Reference).unwrap();
        let d_cand = discrepancy_raw(c, r, DiscrepancyPolicy::Candidate).unwrap();
        prop_assert_eq!(d_ref.signum(), d_cand.signum());
        prop_assert!((d_ref - d_cand / (1.0 - d_cand / 100.0)).abs() <= 1e-9 * d_ref.abs().max(1.0));
    }

    #[test]
    fn group_edges_matches_bfs(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (n_src, n_tgt) = (rng.gen_range(1..12), rng.gen_range(1..12));
        let edges = common::random_edges(&mut rng, n_src, n_tgt);
        let units = group_edges(&edges, n_src, n_tgt).unwrap();
        let got: Vec<_> = units.into_iter().map(|u| (u.src, u.tgt)).collect();
        prop_assert_eq!(got, common::bfs_components(&edges));
    }

    #[test]
    fn preannotation_is_complete_and_unaligned_exact(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (n_src, n_tgt) = (rng.gen_range(1..12), rng.gen_range(1..12));
        let edges = common::random_edges(&mut rng, n_src, n_tgt);
        let toks = |n: usize| (0..n).map(|i| format!("x{}", i)).collect::<Vec<_>>();
        let pair = SentencePair::new("s1", "news", toks(n_src), toks(n_tgt));
        let suggestions = preannotate_sentence(&pair, &edges).unwrap();
        prop_assert_eq!(&suggestions, &preannotate_sentence(&pair, &edges).unwrap());
        let drafted = pair.clone().with_units(suggestions.iter().map(|s| s.unit.clone()).collect());
        prop_assert!(validate(&drafted, ValidationMode::Complete).is_empty());
        let (src_free, tgt_free) = common::edgeless_tokens(&edges, n_src, n_tgt);
        let flagged = |r: RelationLabel, tgt: bool| -> BTreeSet<usize> {
            drafted
                .units
                .iter()
                .filter(|u| u.relation == r)
                .flat_map(|u| if tgt { u.tgt.clone() } else { u.src.clone() })
                .collect()
        };
        prop_assert_eq!(flagged(RelationLabel::UnalignedReduction, false), src_free);
        prop_assert_eq!(flagged(RelationLabel::UnalignedExplicitation, true), tgt_free);
    }

    #[test]
    fn group_head_matches_pair_enumeration(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..12);
        let ling = common::random_tree(&mut rng, n);
        let group: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        prop_assume!(!group.is_empty());
        let head = group_head_pos(&group, &ling).unwrap();
        match common::head_candidates(&group, &ling).as_slice() {
            [only] => {
                prop_assert_eq!(head.index, *only);
                prop_assert!(!head.ambiguous);
            }
            _ => {
                prop_assert_eq!(head.index, *group.iter().next().unwrap());
                prop_assert!(head.ambiguous);
            }
        }
        // Any complete subtree is headed by its root.
        let root = rng.gen_range(0..n);
        let sub = common::subtree(root, &ling);
        let head = group_head_pos(&sub, &ling).unwrap();
        prop_assert_eq!(head.index, root);
        prop_assert!(!head.ambiguous);
    }

    #[test]
    fn transposition_transfer_uses_group_heads(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let pair = with_ling(sentence(seed), &mut rng);
        for unit in pair.units.iter().filter(|u| !u.src.is_empty() && !u.tgt.is_empty()) {
            let as_transposition = AlignedUnit { relation: RelationLabel::Transposition, sub: None, ..unit.clone() };
            let t = transposition_transfer(&pair, &as_transposition).unwrap();
            let pos = |group: &BTreeSet<usize>, ling: &[transrel::model::LingToken]| {
                match common::head_candidates(group, ling).as_slice() {
                    [only] => ling[*only].upos.clone(),
                    _ => ling[*group.iter().next().unwrap()].upos.clone(),
                }
            };
            prop_assert_eq!(&t.src_pos, &pos(&unit.src, pair.src_ling.as_ref().unwrap()));
            prop_assert_eq!(&t.tgt_pos, &pos(&unit.tgt, pair.tgt_ling.as_ref().unwrap()));
        }
    }

    #[test]
    fn corpus_tables_conserve_totals(seed in any::<u64>(), n in 1usize..25) {
        let corpus = random_corpus(seed, n);

        let split = literal_split_by_genre(&corpus);
        for col in ["literal", "non_literal"] {
            let per_genre: u64 = corpus.genres().iter().map(|g| count(split.cell(g, col))).sum();
            prop_assert_eq!(per_genre, count(split.cell("Total", col)));
        }
        let counts = token_counts(&corpus);
        for col in ["sentences", "source_tokens", "target_tokens"] {
            let per_genre: u64 = corpus.genres().iter().map(|g| count(counts.cell(g, col))).sum();
            prop_assert_eq!(per_genre, count(counts.cell("Total", col)));
        }

        let dist = transrel::metrics::relation_distribution(&corpus);
        let pct: f64 = RelationLabel::ALL
            .iter()
            .map(|r| dist.cell(r.as_str(), "percentage").and_then(Cell::as_value).unwrap())
            .sum();
        prop_assert!((pct - 100.0).abs() <= 0.01);

        let stats = token_literal_stats(&corpus).unwrap();
        let literal: usize = stats.sentences.iter().map(|s| s.literal_tokens).sum();
        let tokens: usize = stats.sentences.iter().map(|s| s.tokens).sum();
        prop_assert!((stats.pooled_percentage - 100.0 * literal as f64 / tokens as f64).abs() < 1e-9);
        let mean = stats.sentences.iter().map(|s| s.ratio).sum::<f64>() / stats.sentences.len() as f64;
        prop_assert!((stats.mean_ratio - mean).abs() < 1e-9);
    }

    #[test]
    fn profiles_count_every_unit_once(seed in any::<u64>(), n in 1usize..25) {
        let corpus = random_corpus(seed, n);
        let resources = Resources::default();
        for relation in PROFILED_RELATIONS {
            let units = corpus.units().filter(|(_, u)| u.relation == relation).count() as u64;
            prop_assert_eq!(subcategory_profile(&corpus, relation, &resources).total(), units);
        }
        for side in [UnalignedSide::Explicitation, UnalignedSide::Reduction] {
            let pos = profile_unaligned(&corpus, side, ProfileFacet::Pos).unwrap();
            let dep = profile_unaligned(&corpus, side, ProfileFacet::Dep).unwrap();
            prop_assert_eq!(pos.total(), dep.total());
        }
    }
}
