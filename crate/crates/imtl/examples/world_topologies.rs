//! Per-world topologies induced by a neighborhood frame: the plain
//! w-open family and the min-anchored variant, with interiors and
//! minimal open neighborhoods.
//!
//! ```text
//! cargo run --example world_topologies
//! ```

use imtl::nimodel::NimFrame;
use imtl::topology::{w_min_topology, w_topology, FiniteTopology};
use imtl::worldset::WorldSet;

fn ws(worlds: &[usize]) -> WorldSet {
    worlds.iter().copied().collect()
}

fn show(label: &str, topology: &FiniteTopology) {
    let opens: Vec<String> = topology.opens().iter().map(|o| o.to_string()).collect();
    println!(
        "  {label}: universe {}, opens [{}], violations {:?}",
        topology.universe(),
        opens.join(", "),
        topology.validate()
    );
}

fn main() {
    let frame = NimFrame::new(
        vec![ws(&[0]), ws(&[1])],
        vec![ws(&[0, 1]), ws(&[1])],
        true,
    )
    .unwrap();

    println!("per-world topologies of a two-world frame:");
    for world in 0..frame.world_count() {
        let plain = w_topology(&frame, world).unwrap();
        let anchored = w_min_topology(&frame, world).unwrap();
        show(&format!("O_{world}"), &plain);
        show(&format!("Q_{world}"), &anchored);
        println!(
            "    min open neighborhood of {world} in Q_{world}: {} (= min[{world}] = {})",
            anchored.min_open_nbhd(world).unwrap(),
            frame.min(world)
        );
    }

    // Interiors compute the largest open inside a set.
    let space = w_topology(&frame, 0).unwrap();
    for target in [ws(&[0]), ws(&[1]), ws(&[0, 1]), WorldSet::EMPTY] {
        println!("  Int_O0 {} = {}", target, space.interior(target));
    }

    // The same machinery rejects frames without the closure property the
    // construction needs.
    let loose = NimFrame::new(
        vec![ws(&[0]), ws(&[1])],
        vec![ws(&[0, 1]), ws(&[1])],
        false,
    )
    .unwrap();
    println!(
        "\nwithout the reflexive-box condition the construction refuses: {}",
        w_min_topology(&loose, 0).unwrap_err()
    );

    // Hand-rolled families are validated, not trusted: drop the union
    // {0,1} from a family and validation says which law broke.
    let broken = FiniteTopology::new(ws(&[0, 1]), [WorldSet::EMPTY, ws(&[0]), ws(&[1])]);
    println!("\na family missing its union reports:");
    for violation in broken.validate() {
        println!("  {violation}");
    }
}
