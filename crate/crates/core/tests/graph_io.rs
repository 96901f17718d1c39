use qwalk::graph::graph6::{encode_graph6, parse_graph6, Graph6Error};
use qwalk::graph::{parse_any, path};
use qwalk::Error;

const PATH100: &str = include_str!("data/path100.g6");

#[test]
fn long_length_prefix_path() {
    let g = parse_graph6(PATH100.trim()).unwrap();
    assert_eq!(g.n(), 100);
    assert_eq!(g, path(100).unwrap());
    assert_eq!(encode_graph6(&g), PATH100.trim());
}

#[test]
fn header_is_accepted() {
    let g = parse_any(">>graph6<<Bg\n").unwrap();
    assert_eq!(g, path(3).unwrap());
}

#[test]
fn json_and_graph6_agree() {
    let from_json = parse_any(r#"{"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}"#).unwrap();
    assert_eq!(from_json, parse_any("Ch").unwrap());
}

#[test]
fn malformed_inputs() {
    assert!(matches!(parse_any(""), Err(Error::Graph6(Graph6Error::Empty))));
    assert!(matches!(parse_any("A__"), Err(Error::Graph6(Graph6Error::TrailingData { offset: 2 }))));
    assert!(matches!(parse_any(r#"{"n": 2, "edges": [[0, 0]]}"#), Err(Error::EdgeList(_))));
    assert!(matches!(parse_any(r#"{"n": 2, "edges": [[0, 5]]}"#), Err(Error::VertexOutOfRange { .. })));
    assert!(parse_any(r#"{"n": 2, "edges": [], "extra": 1}"#).is_err());
    let truncated = &PATH100.trim()[..PATH100.trim().len() - 3];
    assert!(matches!(parse_graph6(truncated), Err(Graph6Error::Truncated { .. })));
}
