//! n-player Kuhn poker.
//!
//! Each player antes 1 chip and is dealt one card from a deck of size n+1;
//! one card stays hidden. Players act in seat order choosing pass or bet
//! (one chip). Once somebody bets, every other player responds exactly once
//! in cyclic order with pass (fold) or bet (call), and the hand ends. If
//! nobody bets the hand ends after every seat has acted. The highest card
//! among the players still in takes the pot.

use super::{card_char, Action, ChanceOutcome, Game, History, InfoStateKey, NodeKind, PlayerId};
use crate::error::{Error, Result};

const PASS: Action = Action(0);
const BET: Action = Action(1);

#[derive(Clone, Debug)]
pub struct KuhnGame {
    players: usize,
}

impl KuhnGame {
    pub fn new(players: usize) -> Result<Self> {
        if !(2..=10).contains(&players) {
            return Err(Error::Parameter(format!(
                "kuhn supports 2..=10 players, got {players}"
            )));
        }
        Ok(KuhnGame { players })
    }

    fn deck_size(&self) -> usize {
        self.players + 1
    }

    fn parse(&self, h: &History) -> Result<Parsed> {
        let n = self.players;
        let moves = h.moves();
        let deals = moves.len().min(n);
        let mut cards: Vec<u8> = Vec::with_capacity(n);
        for (k, m) in moves.iter().take(deals).enumerate() {
            let remaining = self.remaining_cards(&cards);
            let idx = m.index();
            if idx >= remaining.len() {
                return Err(Error::InvalidHistory(format!(
                    "chance move {idx} out of range at deal {k}"
                )));
            }
            cards.push(remaining[idx]);
        }
        if moves.len() < n {
            return Ok(Parsed {
                cards,
                decisions: Vec::new(),
            });
        }
        let mut decisions = Vec::with_capacity(moves.len() - n);
        for m in &moves[n..] {
            if m.index() > 1 {
                return Err(Error::InvalidHistory(format!(
                    "kuhn decision id {} out of range",
                    m.index()
                )));
            }
            decisions.push(*m);
        }
        let parsed = Parsed { cards, decisions };
        let limit = parsed.total_decisions(n);
        if parsed.decisions.len() > limit {
            return Err(Error::InvalidHistory(
                "moves continue past a terminal history".into(),
            ));
        }
        Ok(parsed)
    }

    fn remaining_cards(&self, dealt: &[u8]) -> Vec<u8> {
        (0..self.deck_size() as u8)
            .filter(|c| !dealt.contains(c))
            .collect()
    }
}

struct Parsed {
    cards: Vec<u8>,
    decisions: Vec<Action>,
}

impl Parsed {
    fn first_bet(&self) -> Option<usize> {
        self.decisions.iter().position(|a| *a == BET)
    }

    /// Number of decisions in the complete betting sequence.
    fn total_decisions(&self, n: usize) -> usize {
        match self.first_bet() {
            None => n,
            Some(t) => t + n,
        }
    }

    fn seat_to_act(&self, n: usize) -> usize {
        let d = self.decisions.len();
        match self.first_bet() {
            None => d,
            // The bettor sat at seat t == decision index t; responders
            // follow in cyclic order.
            Some(t) => (t + (d - t)) % n,
        }
    }

    fn is_terminal(&self, n: usize) -> bool {
        self.cards.len() == n && self.decisions.len() == self.total_decisions(n)
    }
}

impl Game for KuhnGame {
    fn id(&self) -> String {
        format!("kuhn:{}", self.players)
    }

    fn num_players(&self) -> usize {
        self.players
    }

    fn max_episode_length(&self) -> usize {
        // n deals, up to n-1 passes before a bet, then n responses.
        3 * self.players - 1
    }

    fn reward_range(&self) -> (f64, f64) {
        (-2.0, 2.0 * (self.players as f64 - 1.0))
    }

    fn current_player(&self, h: &History) -> Result<NodeKind> {
        let n = self.players;
        let parsed = self.parse(h)?;
        if parsed.cards.len() < n {
            return Ok(NodeKind::Chance);
        }
        if parsed.is_terminal(n) {
            return Ok(NodeKind::Terminal);
        }
        Ok(NodeKind::Player(parsed.seat_to_act(n)))
    }

    fn legal_actions(&self, h: &History) -> Result<Vec<Action>> {
        match self.current_player(h)? {
            NodeKind::Player(_) => Ok(vec![PASS, BET]),
            NodeKind::Chance => Ok(self
                .chance_outcomes(h)?
                .iter()
                .map(|o| o.action)
                .collect()),
            NodeKind::Terminal => Err(Error::Contract(
                "legal_actions called on a terminal history".into(),
            )),
        }
    }

    fn action_label(&self, h: &History, action: Action) -> Result<String> {
        match self.current_player(h)? {
            NodeKind::Player(_) => match action {
                PASS => Ok("pass".into()),
                BET => Ok("bet".into()),
                _ => Err(Error::IllegalAction {
                    action: action.index(),
                    num_legal: 2,
                }),
            },
            NodeKind::Chance => {
                let parsed = self.parse(h)?;
                let remaining = self.remaining_cards(&parsed.cards);
                remaining
                    .get(action.index())
                    .map(|c| format!("deal:{}", card_char(*c)))
                    .ok_or(Error::IllegalAction {
                        action: action.index(),
                        num_legal: remaining.len(),
                    })
            }
            NodeKind::Terminal => Err(Error::Contract(
                "action_label called on a terminal history".into(),
            )),
        }
    }

    fn apply(&self, h: &History, action: Action) -> Result<History> {
        let num_legal = match self.current_player(h)? {
            NodeKind::Terminal => {
                return Err(Error::Contract("apply called on a terminal history".into()))
            }
            NodeKind::Chance => self.chance_outcomes(h)?.len(),
            NodeKind::Player(_) => 2,
        };
        if action.index() >= num_legal {
            return Err(Error::IllegalAction {
                action: action.index(),
                num_legal,
            });
        }
        Ok(h.child(action))
    }

    fn chance_outcomes(&self, h: &History) -> Result<Vec<ChanceOutcome>> {
        let parsed = self.parse(h)?;
        if parsed.cards.len() >= self.players {
            return Err(Error::Contract(
                "chance_outcomes called on a non-chance node".into(),
            ));
        }
        let remaining = self.remaining_cards(&parsed.cards);
        let p = 1.0 / remaining.len() as f64;
        Ok((0..remaining.len())
            .map(|i| ChanceOutcome {
                action: Action(i as u8),
                prob: p,
            })
            .collect())
    }

    fn returns(&self, h: &History) -> Result<Vec<f64>> {
        let n = self.players;
        let parsed = self.parse(h)?;
        if !parsed.is_terminal(n) {
            return Err(Error::Contract(
                "returns called on a non-terminal history".into(),
            ));
        }
        let mut contrib = vec![1.0f64; n]; // antes
        let mut in_hand = vec![true; n];
        match parsed.first_bet() {
            None => {}
            Some(t) => {
                let bettor = t;
                contrib[bettor] += 1.0;
                for (offset, a) in parsed.decisions[t + 1..].iter().enumerate() {
                    let seat = (bettor + 1 + offset) % n;
                    if *a == BET {
                        contrib[seat] += 1.0;
                    } else {
                        in_hand[seat] = false;
                    }
                }
            }
        }
        let pot: f64 = contrib.iter().sum();
        let winner = (0..n)
            .filter(|&i| in_hand[i])
            .max_by_key(|&i| parsed.cards[i])
            .expect("at least one player stays in");
        let mut returns: Vec<f64> = contrib.iter().map(|c| -c).collect();
        returns[winner] += pot;
        Ok(returns)
    }

    fn info_state_key(&self, h: &History, player: PlayerId) -> Result<InfoStateKey> {
        if player >= self.players {
            return Err(Error::Parameter(format!(
                "player {player} out of range for {}",
                self.id()
            )));
        }
        let parsed = self.parse(h)?;
        let private = parsed
            .cards
            .get(player)
            .map(|c| card_char(*c).to_string())
            .unwrap_or_default();
        let public: String = parsed
            .decisions
            .iter()
            .map(|a| if *a == BET { 'b' } else { 'p' })
            .collect();
        Ok(InfoStateKey::new(player, &private, &public))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{enumerate_info_states, info_states_per_player};

    fn play(game: &KuhnGame, ids: &[u8]) -> History {
        let mut h = History::root();
        for &id in ids {
            h = game.apply(&h, Action(id)).unwrap();
        }
        h
    }

    #[test]
    fn deal_then_first_player() {
        let g = KuhnGame::new(2).unwrap();
        assert_eq!(g.current_player(&History::root()).unwrap(), NodeKind::Chance);
        let h = play(&g, &[0, 0]);
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Player(0));
        let labels: Vec<_> = g
            .legal_actions(&h)
            .unwrap()
            .iter()
            .map(|a| g.action_label(&h, *a).unwrap())
            .collect();
        assert_eq!(labels, vec!["pass", "bet"]);
    }

    #[test]
    fn chance_outcomes_shrink_as_cards_leave_the_deck() {
        let g = KuhnGame::new(2).unwrap();
        let root_outcomes = g.chance_outcomes(&History::root()).unwrap();
        assert_eq!(root_outcomes.len(), 3);
        for o in &root_outcomes {
            assert!((o.prob - 1.0 / 3.0).abs() < 1e-15);
        }
        let h = play(&g, &[1]); // deal Q to player 0
        let second = g.chance_outcomes(&h).unwrap();
        assert_eq!(second.len(), 2);
        for o in &second {
            assert!((o.prob - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn pot_accounting_matches_hand_traces() {
        let g = KuhnGame::new(2).unwrap();
        // Deal K to P0, J to P1 (ids: deal 2 then remaining [0,1] index 0).
        let both_pass = play(&g, &[2, 0, 0, 0]);
        assert_eq!(g.returns(&both_pass).unwrap(), vec![1.0, -1.0]);
        // P0 bets, P1 folds: P0 wins the antes.
        let bet_fold = play(&g, &[2, 0, 1, 0]);
        assert_eq!(g.returns(&bet_fold).unwrap(), vec![1.0, -1.0]);
        // Deal J to P0, K to P1; bet then call: P1 wins 2.
        let bet_call = play(&g, &[0, 1, 1, 1]);
        assert_eq!(g.returns(&bet_call).unwrap(), vec![-2.0, 2.0]);
        // Check, bet, call with P0 holding the better card.
        let check_bet_call = play(&g, &[2, 0, 0, 1, 1]);
        assert_eq!(g.returns(&check_bet_call).unwrap(), vec![2.0, -2.0]);
    }

    #[test]
    fn out_of_range_action_is_rejected() {
        let g = KuhnGame::new(2).unwrap();
        let h = play(&g, &[0, 1]);
        assert!(matches!(
            g.apply(&h, Action(2)),
            Err(Error::IllegalAction { .. })
        ));
        assert!(matches!(
            g.returns(&h),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn keys_hide_opponent_cards_and_expose_own() {
        let g = KuhnGame::new(2).unwrap();
        // P0 holds J; P1 holds Q vs K.
        let h1 = play(&g, &[0, 0]); // J, Q
        let h2 = play(&g, &[0, 1]); // J, K
        assert_eq!(
            g.info_state_key(&h1, 0).unwrap(),
            g.info_state_key(&h2, 0).unwrap()
        );
        assert_ne!(
            g.info_state_key(&h1, 1).unwrap(),
            g.info_state_key(&h2, 1).unwrap()
        );
        // Same public actions, different own card.
        let j = play(&g, &[0, 0]);
        let q = play(&g, &[1, 0]);
        assert_ne!(
            g.info_state_key(&j, 0).unwrap(),
            g.info_state_key(&q, 0).unwrap()
        );
        assert_eq!(g.info_state_key(&h1, 0).unwrap().as_str(), "p0|0|");
    }

    #[test]
    fn two_player_info_state_counts() {
        let g = KuhnGame::new(2).unwrap();
        let per_player = info_states_per_player(&g).unwrap();
        assert_eq!(per_player, vec![6, 6]);
        assert_eq!(enumerate_info_states(&g).unwrap().len(), 12);
    }

    #[test]
    fn three_player_betting_wraps_around() {
        let g = KuhnGame::new(3).unwrap();
        // All deal, P0 passes, P1 bets; responders are P2 then P0.
        let h = play(&g, &[0, 0, 0, 0, 1]);
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Player(2));
        let h = g.apply(&h, PASS).unwrap();
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Player(0));
        let h = g.apply(&h, BET).unwrap();
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Terminal);
        let r = g.returns(&h).unwrap();
        assert_eq!(r.iter().sum::<f64>(), 0.0);
    }
}
