//! Extensive-form game abstraction and the concrete games used by the
//! solvers: n-player Kuhn poker, n-player Leduc poker, and matrix games
//! lifted to one-shot simultaneous-move trees.
//!
//! Histories are plain action sequences; games interpret them on demand.
//! Everything here is immutable after construction, so games and histories
//! can be shared freely across threads.

mod kuhn;
mod leduc;
mod matrix;

pub use kuhn::KuhnGame;
pub use leduc::LeducGame;
pub use matrix::{LiftedMatrixGame, MatrixGame};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type PlayerId = usize;

/// One move at a decision point. Ids are dense per node: `0..|A(h)|-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Action(pub u8);

impl Action {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Whose turn it is at a history.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeKind {
    Chance,
    Player(PlayerId),
    Terminal,
}

/// A full action sequence from the empty root, including chance moves.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct History {
    moves: Vec<Action>,
}

impl History {
    pub fn root() -> Self {
        History { moves: Vec::new() }
    }

    pub fn moves(&self) -> &[Action] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// The history extended by one action; `self` is untouched.
    pub fn child(&self, action: Action) -> History {
        let mut moves = Vec::with_capacity(self.moves.len() + 1);
        moves.extend_from_slice(&self.moves);
        moves.push(action);
        History { moves }
    }
}

/// One branch of a chance node.
#[derive(Clone, Copy, Debug)]
pub struct ChanceOutcome {
    pub action: Action,
    pub prob: f64,
}

/// A player-scoped observation key: `p<i>|<private obs>|<public obs>`.
///
/// Two histories map to the same key for player `i` exactly when `i`'s
/// observations agree along both. The text form is canonical and stable
/// across runs, so keys can be used directly in serialized tables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct InfoStateKey {
    player: PlayerId,
    text: String,
}

impl InfoStateKey {
    pub fn new(player: PlayerId, private_obs: &str, public_obs: &str) -> Self {
        InfoStateKey {
            player,
            text: format!("p{player}|{private_obs}|{public_obs}"),
        }
    }

    /// Parses the canonical text form back into a key.
    pub fn parse(text: &str) -> Result<Self> {
        let rest = text
            .strip_prefix('p')
            .ok_or_else(|| Error::Parse(format!("info state key must start with 'p': `{text}`")))?;
        let player_part = rest
            .split('|')
            .next()
            .ok_or_else(|| Error::Parse(format!("malformed info state key `{text}`")))?;
        let player: PlayerId = player_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad player index in info state key `{text}`")))?;
        Ok(InfoStateKey {
            player,
            text: text.to_string(),
        })
    }

    pub fn player(&self) -> PlayerId {
        self.player
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl fmt::Display for InfoStateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Encodes a card or small id as a single uppercase base-36 character.
/// Betting actions use lowercase letters, so the two never collide.
pub(crate) fn card_char(id: u8) -> char {
    char::from_digit(id as u32, 36)
        .expect("card id fits in base 36")
        .to_ascii_uppercase()
}

/// An extensive-form game. All operations are pure; histories carry no
/// game-side state.
pub trait Game: Send + Sync {
    /// Canonical selection string, e.g. `kuhn:2`.
    fn id(&self) -> String;
    fn num_players(&self) -> usize;
    /// Upper bound on moves (including chance) in one episode.
    fn max_episode_length(&self) -> usize;
    /// Inclusive (min, max) return to any single player.
    fn reward_range(&self) -> (f64, f64);
    fn current_player(&self, h: &History) -> Result<NodeKind>;
    /// Legal actions at a non-terminal decision node, ids dense from 0.
    fn legal_actions(&self, h: &History) -> Result<Vec<Action>>;
    fn action_label(&self, h: &History, action: Action) -> Result<String>;
    fn apply(&self, h: &History, action: Action) -> Result<History>;
    fn chance_outcomes(&self, h: &History) -> Result<Vec<ChanceOutcome>>;
    /// Per-player chip deltas at a terminal history.
    fn returns(&self, h: &History) -> Result<Vec<f64>>;
    fn info_state_key(&self, h: &History, player: PlayerId) -> Result<InfoStateKey>;
}

/// Parses a game selection string: `kuhn:<n>`, `leduc:<n>`,
/// `leduc:<n>:penalty`, or `matrix:<name>`.
pub fn game_from_str(spec: &str) -> Result<Arc<dyn Game>> {
    let mut parts = spec.split(':');
    let family = parts.next().unwrap_or("");
    match family {
        "kuhn" => {
            let n = parse_players(parts.next(), spec)?;
            Ok(Arc::new(KuhnGame::new(n)?))
        }
        "leduc" => {
            let n = parse_players(parts.next(), spec)?;
            let penalty = match parts.next() {
                None => false,
                Some("penalty") => true,
                Some(other) => {
                    return Err(Error::UnknownName(format!(
                        "unknown leduc mode `{other}` in `{spec}`"
                    )))
                }
            };
            Ok(Arc::new(LeducGame::new(n, penalty)?))
        }
        "matrix" => {
            let name = parts
                .next()
                .ok_or_else(|| Error::UnknownName(format!("missing matrix name in `{spec}`")))?;
            Ok(Arc::new(LiftedMatrixGame::new(MatrixGame::by_name(name)?)))
        }
        _ => Err(Error::UnknownName(format!("unknown game `{spec}`"))),
    }
}

fn parse_players(part: Option<&str>, spec: &str) -> Result<usize> {
    part.and_then(|p| p.parse::<usize>().ok())
        .ok_or_else(|| Error::UnknownName(format!("missing or bad player count in `{spec}`")))
}

/// Enumerates every information state reachable in the game tree, mapping
/// each key to its legal action count. Needed to size tabular policies.
pub fn enumerate_info_states(
    game: &dyn Game,
) -> Result<std::collections::BTreeMap<InfoStateKey, usize>> {
    let mut out = std::collections::BTreeMap::new();
    let mut stack = vec![History::root()];
    while let Some(h) = stack.pop() {
        match game.current_player(&h)? {
            NodeKind::Terminal => {}
            NodeKind::Chance => {
                for outcome in game.chance_outcomes(&h)? {
                    stack.push(h.child(outcome.action));
                }
            }
            NodeKind::Player(p) => {
                let actions = game.legal_actions(&h)?;
                let key = game.info_state_key(&h, p)?;
                out.insert(key, actions.len());
                for a in actions {
                    stack.push(h.child(a));
                }
            }
        }
    }
    Ok(out)
}

/// Number of information states belonging to each player.
pub fn info_states_per_player(game: &dyn Game) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; game.num_players()];
    for key in enumerate_info_states(game)?.keys() {
        counts[key.player()] += 1;
    }
    Ok(counts)
}
