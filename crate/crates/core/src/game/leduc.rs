//! n-player Leduc poker.
//!
//! The deck holds 2(n+1) cards in two suits of identical ranks (rank =
//! id / 2). Each player antes 1 chip and receives one private card. There
//! are two betting rounds with bet sizes 2 and 4 and at most two raises per
//! round; a single public card is revealed between the rounds. At showdown
//! a private card pairing the public card wins, otherwise the highest rank
//! wins, with ties splitting the pot.
//!
//! Two action-space modes exist. In the default legal-action mode the legal
//! set at each node is the subset of {fold, call, raise} currently valid
//! (fold only faces an outstanding bet, raise only under the cap). Penalty
//! mode keeps all three actions available everywhere and maps an invalid
//! choice to an immediate terminal that charges the offender a fixed
//! penalty, redistributed to the others to keep the game zero-sum.

use std::collections::VecDeque;

use super::{card_char, Action, ChanceOutcome, Game, History, InfoStateKey, NodeKind, PlayerId};
use crate::error::{Error, Result};

const PENALTY: f64 = 2.0;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Move {
    Fold,
    Call,
    Raise,
}

impl Move {
    fn code(self) -> char {
        match self {
            Move::Fold => 'f',
            Move::Call => 'c',
            Move::Raise => 'r',
        }
    }

    fn label(self) -> &'static str {
        match self {
            Move::Fold => "fold",
            Move::Call => "call",
            Move::Raise => "raise",
        }
    }
}

const ALL_MOVES: [Move; 3] = [Move::Fold, Move::Call, Move::Raise];

#[derive(Clone, Debug)]
pub struct LeducGame {
    players: usize,
    penalty_mode: bool,
}

impl LeducGame {
    pub fn new(players: usize, penalty_mode: bool) -> Result<Self> {
        if !(2..=10).contains(&players) {
            return Err(Error::Parameter(format!(
                "leduc supports 2..=10 players, got {players}"
            )));
        }
        Ok(LeducGame {
            players,
            penalty_mode,
        })
    }

    fn deck_size(&self) -> usize {
        2 * (self.players + 1)
    }

    fn raise_size(round: u8) -> f64 {
        if round == 0 {
            2.0
        } else {
            4.0
        }
    }

    fn parse(&self, h: &History) -> Result<State> {
        let mut state = State::start(self.players);
        for (i, m) in h.moves().iter().enumerate() {
            state.step(self, *m).map_err(|e| match e {
                Error::IllegalAction { action, num_legal } => Error::InvalidHistory(format!(
                    "move {i} (id {action}) invalid, {num_legal} branches available"
                )),
                other => other,
            })?;
        }
        Ok(state)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Phase {
    Deal,
    Betting,
    Reveal,
    Showdown,
    FoldWin,
    Penalized(usize),
}

#[derive(Clone, Debug)]
struct State {
    players: usize,
    phase: Phase,
    private: Vec<u8>,
    public: Option<u8>,
    folded: Vec<bool>,
    contrib: Vec<f64>,
    round_contrib: Vec<f64>,
    stake: f64,
    raises: u8,
    round: u8,
    to_act: VecDeque<usize>,
    /// Per-player observation strings: betting codes plus the public card.
    public_obs: String,
}

impl State {
    fn start(players: usize) -> State {
        State {
            players,
            phase: Phase::Deal,
            private: Vec::with_capacity(players),
            public: None,
            folded: vec![false; players],
            contrib: vec![1.0; players],
            round_contrib: vec![0.0; players],
            stake: 0.0,
            raises: 0,
            round: 0,
            to_act: VecDeque::new(),
            public_obs: String::new(),
        }
    }

    fn remaining_cards(&self, deck_size: usize) -> Vec<u8> {
        (0..deck_size as u8)
            .filter(|c| !self.private.contains(c) && self.public != Some(*c))
            .collect()
    }

    fn active(&self) -> Vec<usize> {
        (0..self.players).filter(|&i| !self.folded[i]).collect()
    }

    fn current_actor(&self) -> Option<usize> {
        self.to_act.front().copied()
    }

    fn is_terminal(&self) -> bool {
        matches!(
            self.phase,
            Phase::Showdown | Phase::FoldWin | Phase::Penalized(_)
        )
    }

    fn begin_round(&mut self, round: u8) {
        self.round = round;
        self.stake = 0.0;
        self.raises = 0;
        self.round_contrib = vec![0.0; self.players];
        self.to_act = (0..self.players).filter(|&i| !self.folded[i]).collect();
        self.phase = Phase::Betting;
    }

    /// Moves valid under the betting rules at the current decision node.
    fn restricted_moves(&self, actor: usize) -> Vec<Move> {
        let mut moves = Vec::with_capacity(3);
        if self.round_contrib[actor] < self.stake {
            moves.push(Move::Fold);
        }
        moves.push(Move::Call);
        if self.raises < 2 {
            moves.push(Move::Raise);
        }
        moves
    }

    fn step(&mut self, game: &LeducGame, action: Action) -> Result<()> {
        match self.phase {
            Phase::Deal => {
                let remaining = self.remaining_cards(game.deck_size());
                let card = *remaining.get(action.index()).ok_or(Error::IllegalAction {
                    action: action.index(),
                    num_legal: remaining.len(),
                })?;
                self.private.push(card);
                if self.private.len() == self.players {
                    self.begin_round(0);
                }
                Ok(())
            }
            Phase::Reveal => {
                let remaining = self.remaining_cards(game.deck_size());
                let card = *remaining.get(action.index()).ok_or(Error::IllegalAction {
                    action: action.index(),
                    num_legal: remaining.len(),
                })?;
                self.public = Some(card);
                self.public_obs.push(card_char(card));
                self.begin_round(1);
                Ok(())
            }
            Phase::Betting => {
                let actor = self.current_actor().expect("betting phase has an actor");
                let restricted = self.restricted_moves(actor);
                let mv = if game.penalty_mode {
                    let mv = *ALL_MOVES.get(action.index()).ok_or(Error::IllegalAction {
                        action: action.index(),
                        num_legal: ALL_MOVES.len(),
                    })?;
                    if !restricted.contains(&mv) {
                        self.public_obs.push(mv.code());
                        self.phase = Phase::Penalized(actor);
                        return Ok(());
                    }
                    mv
                } else {
                    *restricted.get(action.index()).ok_or(Error::IllegalAction {
                        action: action.index(),
                        num_legal: restricted.len(),
                    })?
                };
                self.public_obs.push(mv.code());
                self.to_act.pop_front();
                match mv {
                    Move::Fold => {
                        self.folded[actor] = true;
                        if self.active().len() == 1 {
                            self.phase = Phase::FoldWin;
                            return Ok(());
                        }
                    }
                    Move::Call => {
                        let owed = self.stake - self.round_contrib[actor];
                        self.round_contrib[actor] += owed;
                        self.contrib[actor] += owed;
                    }
                    Move::Raise => {
                        self.stake += LeducGame::raise_size(self.round);
                        let owed = self.stake - self.round_contrib[actor];
                        self.round_contrib[actor] += owed;
                        self.contrib[actor] += owed;
                        self.raises += 1;
                        // Everyone else still in must respond to the raise.
                        self.to_act = (1..self.players)
                            .map(|k| (actor + k) % self.players)
                            .filter(|&i| !self.folded[i])
                            .collect();
                    }
                }
                if self.to_act.is_empty() {
                    if self.round == 0 {
                        self.phase = Phase::Reveal;
                    } else {
                        self.phase = Phase::Showdown;
                    }
                }
                Ok(())
            }
            Phase::Showdown | Phase::FoldWin | Phase::Penalized(_) => Err(Error::InvalidHistory(
                "moves continue past a terminal history".into(),
            )),
        }
    }

    fn returns(&self) -> Vec<f64> {
        if let Phase::Penalized(offender) = self.phase {
            let share = PENALTY / (self.players as f64 - 1.0);
            return (0..self.players)
                .map(|i| if i == offender { -PENALTY } else { share })
                .collect();
        }
        let active = self.active();
        let pot: f64 = self.contrib.iter().sum();
        let winners: Vec<usize> = if active.len() == 1 {
            active
        } else {
            let public_rank = self.public.map(|c| c / 2);
            let paired: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&i| Some(self.private[i] / 2) == public_rank)
                .collect();
            if !paired.is_empty() {
                paired
            } else {
                let best = active.iter().map(|&i| self.private[i] / 2).max().unwrap();
                active
                    .into_iter()
                    .filter(|&i| self.private[i] / 2 == best)
                    .collect()
            }
        };
        let share = pot / winners.len() as f64;
        let mut returns: Vec<f64> = self.contrib.iter().map(|c| -c).collect();
        for w in winners {
            returns[w] += share;
        }
        returns
    }
}

impl Game for LeducGame {
    fn id(&self) -> String {
        if self.penalty_mode {
            format!("leduc:{}:penalty", self.players)
        } else {
            format!("leduc:{}", self.players)
        }
    }

    fn num_players(&self) -> usize {
        self.players
    }

    fn max_episode_length(&self) -> usize {
        // n deals + 1 reveal + two rounds of at most n + 2(n-1) decisions.
        7 * self.players - 3
    }

    fn reward_range(&self) -> (f64, f64) {
        // Max per-round contribution: 1 + 4 + 8 chips.
        let max_contrib = 13.0;
        (-max_contrib, max_contrib * (self.players as f64 - 1.0))
    }

    fn current_player(&self, h: &History) -> Result<NodeKind> {
        let state = self.parse(h)?;
        Ok(match state.phase {
            Phase::Deal | Phase::Reveal => NodeKind::Chance,
            Phase::Betting => NodeKind::Player(state.current_actor().unwrap()),
            _ => NodeKind::Terminal,
        })
    }

    fn legal_actions(&self, h: &History) -> Result<Vec<Action>> {
        let state = self.parse(h)?;
        let count = match state.phase {
            Phase::Deal | Phase::Reveal => state.remaining_cards(self.deck_size()).len(),
            Phase::Betting => {
                if self.penalty_mode {
                    ALL_MOVES.len()
                } else {
                    state
                        .restricted_moves(state.current_actor().unwrap())
                        .len()
                }
            }
            _ => {
                return Err(Error::Contract(
                    "legal_actions called on a terminal history".into(),
                ))
            }
        };
        Ok((0..count).map(|i| Action(i as u8)).collect())
    }

    fn action_label(&self, h: &History, action: Action) -> Result<String> {
        let state = self.parse(h)?;
        match state.phase {
            Phase::Deal | Phase::Reveal => {
                let remaining = state.remaining_cards(self.deck_size());
                let card = remaining.get(action.index()).ok_or(Error::IllegalAction {
                    action: action.index(),
                    num_legal: remaining.len(),
                })?;
                let prefix = if state.phase == Phase::Deal {
                    "deal"
                } else {
                    "public"
                };
                Ok(format!("{prefix}:{}", card_char(*card)))
            }
            Phase::Betting => {
                let moves = if self.penalty_mode {
                    ALL_MOVES.to_vec()
                } else {
                    state.restricted_moves(state.current_actor().unwrap())
                };
                moves
                    .get(action.index())
                    .map(|m| m.label().to_string())
                    .ok_or(Error::IllegalAction {
                        action: action.index(),
                        num_legal: moves.len(),
                    })
            }
            _ => Err(Error::Contract(
                "action_label called on a terminal history".into(),
            )),
        }
    }

    fn apply(&self, h: &History, action: Action) -> Result<History> {
        let mut state = self.parse(h)?;
        if state.is_terminal() {
            return Err(Error::Contract("apply called on a terminal history".into()));
        }
        state.step(self, action)?;
        Ok(h.child(action))
    }

    fn chance_outcomes(&self, h: &History) -> Result<Vec<ChanceOutcome>> {
        let state = self.parse(h)?;
        if !matches!(state.phase, Phase::Deal | Phase::Reveal) {
            return Err(Error::Contract(
                "chance_outcomes called on a non-chance node".into(),
            ));
        }
        let remaining = state.remaining_cards(self.deck_size());
        let p = 1.0 / remaining.len() as f64;
        Ok((0..remaining.len())
            .map(|i| ChanceOutcome {
                action: Action(i as u8),
                prob: p,
            })
            .collect())
    }

    fn returns(&self, h: &History) -> Result<Vec<f64>> {
        let state = self.parse(h)?;
        if !state.is_terminal() {
            return Err(Error::Contract(
                "returns called on a non-terminal history".into(),
            ));
        }
        Ok(state.returns())
    }

    fn info_state_key(&self, h: &History, player: PlayerId) -> Result<InfoStateKey> {
        if player >= self.players {
            return Err(Error::Parameter(format!(
                "player {player} out of range for {}",
                self.id()
            )));
        }
        let state = self.parse(h)?;
        let private = state
            .private
            .get(player)
            .map(|c| card_char(*c).to_string())
            .unwrap_or_default();
        Ok(InfoStateKey::new(player, &private, &state.public_obs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply_all(game: &LeducGame, ids: &[u8]) -> History {
        let mut h = History::root();
        for &id in ids {
            h = game.apply(&h, Action(id)).unwrap();
        }
        h
    }

    fn labels(game: &LeducGame, h: &History) -> Vec<String> {
        game.legal_actions(h)
            .unwrap()
            .iter()
            .map(|a| game.action_label(h, *a).unwrap())
            .collect()
    }

    #[test]
    fn opening_node_offers_call_and_raise_only() {
        let g = LeducGame::new(2, false).unwrap();
        let h = apply_all(&g, &[0, 0]);
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Player(0));
        assert_eq!(labels(&g, &h), vec!["call", "raise"]);
    }

    #[test]
    fn raise_cap_leaves_fold_or_call() {
        let g = LeducGame::new(2, false).unwrap();
        // Deal, then raise (id 1), raise (facing a bet: fold/call/raise, id 2).
        let h = apply_all(&g, &[0, 0, 1, 2]);
        assert_eq!(labels(&g, &h), vec!["fold", "call"]);
    }

    #[test]
    fn public_card_comes_from_the_remaining_deck() {
        let g = LeducGame::new(2, false).unwrap();
        // Both call round 1.
        let h = apply_all(&g, &[0, 0, 0, 0]);
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Chance);
        let outcomes = g.chance_outcomes(&h).unwrap();
        assert_eq!(outcomes.len(), 4);
        for o in &outcomes {
            assert!((o.prob - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn keys_change_at_the_reveal() {
        let g = LeducGame::new(2, false).unwrap();
        let before = apply_all(&g, &[0, 0, 0, 0]);
        let key_before = g.info_state_key(&before, 0).unwrap();
        let after = g.apply(&before, Action(0)).unwrap();
        let key_after = g.info_state_key(&after, 0).unwrap();
        assert_ne!(key_before, key_after);
        assert_eq!(key_before.as_str(), "p0|0|cc");
        assert_eq!(key_after.as_str(), "p0|0|cc2");
    }

    #[test]
    fn showdown_pair_beats_higher_rank() {
        let g = LeducGame::new(2, false).unwrap();
        // P0 gets card 0 (rank 0), P1 gets card 5 (rank 2, the best).
        // Round 1: both call. Public card 1 (rank 0) pairs P0.
        // Round 2: both call.
        let h = apply_all(&g, &[0, 4, 0, 0, 0, 0, 0]);
        let r = g.returns(&h).unwrap();
        assert_eq!(r, vec![1.0, -1.0]);
        assert_eq!(r.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn tied_ranks_split_the_pot() {
        let g = LeducGame::new(2, false).unwrap();
        // Cards 4 and 5 share rank 2; public card is rank 0.
        // P0 raises (2), P1 calls; public; both call round 2.
        let h = apply_all(&g, &[4, 3, 1, 1, 0, 0, 0]);
        let r = g.returns(&h).unwrap();
        assert_eq!(r, vec![0.0, 0.0]);
    }

    #[test]
    fn fold_ends_the_hand_immediately() {
        let g = LeducGame::new(2, false).unwrap();
        // P0 raises, P1 folds (facing a bet: fold is id 0).
        let h = apply_all(&g, &[0, 1, 1, 0]);
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Terminal);
        let r = g.returns(&h).unwrap();
        // P0 staked 3 (ante + raise), P1 loses the ante.
        assert_eq!(r, vec![1.0, -1.0]);
    }

    #[test]
    fn betting_escalates_pot_with_round_sizes() {
        let g = LeducGame::new(2, false).unwrap();
        // Round 1: raise, raise, call => 1 + 2 + 2 each plus ante = 5 each.
        // Round 2: raise, raise, call => 8 more each. Total contrib 13 each.
        let h = apply_all(&g, &[0, 2, 1, 2, 1, 0, 1, 2, 1]);
        let r = g.returns(&h).unwrap();
        // P1 holds card 1 (rank 0) and pairs public card 0? No: public is
        // dealt id 0 from remaining [1,3,4,5] => card 1, rank 0, pairing P0.
        assert_eq!(r.iter().sum::<f64>(), 0.0);
        assert_eq!(r.iter().map(|x| x.abs()).sum::<f64>(), 26.0);
    }

    #[test]
    fn penalty_mode_charges_the_offender() {
        let g = LeducGame::new(2, true).unwrap();
        let h = apply_all(&g, &[0, 0]);
        assert_eq!(labels(&g, &h), vec!["fold", "call", "raise"]);
        // Folding with no outstanding bet is invalid: penalty terminal.
        let h = g.apply(&h, Action(0)).unwrap();
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Terminal);
        assert_eq!(g.returns(&h).unwrap(), vec![-2.0, 2.0]);
    }

    #[test]
    fn three_player_round_requeues_after_raise() {
        let g = LeducGame::new(3, false).unwrap();
        // Deal three cards; P0 calls, P1 raises, P2 and P0 must respond.
        let h = apply_all(&g, &[0, 0, 0, 0, 1]);
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Player(2));
        let h = g.apply(&h, Action(1)).unwrap(); // P2 calls
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Player(0));
        let h = g.apply(&h, Action(1)).unwrap(); // P0 calls
        assert_eq!(g.current_player(&h).unwrap(), NodeKind::Chance);
    }
}
