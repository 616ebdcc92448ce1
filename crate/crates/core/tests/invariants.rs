//! Property tests over the larger input spaces: random words in the
//! rank-8 generators and random raw bit patterns.

use proptest::prelude::*;

use pg240::game::{self, GamePos};
use pg240::gf2::{BitVec8, Coset};
use pg240::weyl::{act_lambda, GroupName, SignedPerm};
use pg240::world::World;

fn word_to_element(word: &[usize]) -> SignedPerm {
    let gens = GroupName::D8.generators();
    word.iter().fold(SignedPerm::identity(), |acc, &i| {
        gens[i % gens.len()].compose(acc)
    })
}

proptest! {
    #[test]
    fn canonical_representative_is_stable(v in any::<u8>()) {
        let c = Coset::canonical(BitVec8(v));
        prop_assert_eq!(c, Coset::canonical(BitVec8(!v)));
        prop_assert!(c.rep().weight() <= 4);
        if c.rep().weight() == 4 {
            prop_assert!(c.rep().0 & 0x80 != 0, "ties resolve toward the half with 8");
        }
        prop_assert_eq!(Coset::canonical(c.rep()), c);
    }

    #[test]
    fn words_act_homomorphically_on_cosets(word in prop::collection::vec(0usize..8, 0..24), v in any::<u8>()) {
        let w = word_to_element(&word);
        let c = Coset::canonical(BitVec8(v));
        // Applying the word letter by letter equals applying the product.
        let gens = GroupName::D8.generators();
        let mut stepped = c;
        for &i in &word {
            stepped = gens[i % gens.len()].apply_coset(stepped);
        }
        prop_assert_eq!(w.apply_coset(c), stepped);
    }

    #[test]
    fn words_act_homomorphically_on_packings(
        word in prop::collection::vec(0usize..8, 0..16),
        pid in 0usize..240,
    ) {
        let w = World::get();
        let elem = word_to_element(&word);
        let gens = GroupName::D8.generators();
        let mut stepped = pid;
        for &i in &word {
            stepped = act_lambda(gens[i % gens.len()], stepped, &w.idx).unwrap();
        }
        prop_assert_eq!(act_lambda(elem, pid, &w.idx), Some(stepped));
        // Type-D elements always keep even sign count.
        prop_assert!(elem.in_type_d());
    }

    #[test]
    fn random_play_never_breaks_the_weight_order(
        mask in 0u8..128,
        choices in prop::collection::vec(any::<usize>(), 0..16),
    ) {
        let pos = GamePos(mask & 0x7f);
        prop_assume!(pos.is_legal());
        let w = World::get();
        let mut cur = pos;
        for &c in &choices {
            let moves = game::legal_moves(cur);
            if moves.is_empty() {
                break;
            }
            let mv = moves[c % moves.len()];
            prop_assert!(game::move_delta_is_positive_rank7_root(&w.rs, cur, mv));
            cur = game::apply(cur, mv).unwrap();
            prop_assert!(cur.is_legal());
        }
    }
}
