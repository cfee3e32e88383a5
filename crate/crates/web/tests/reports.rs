use qlayout_web::{fixed_order_report, one_queue_report, queue_number_report};

fn k8() -> String {
    (0..8).flat_map(|a| ((a + 1)..8).map(move |b| format!("{a} {b}\n"))).collect()
}

#[test]
fn k8_queue_number() {
    let r = queue_number_report(&k8()).unwrap();
    assert_eq!(r["queue_number"], 4);
    assert!(r["svg"].as_str().unwrap().starts_with("<svg"));
}

#[test]
fn identity_order_of_k8_has_a_rainbow_of_four() {
    let r = fixed_order_report(&k8(), "0 1 2 3 4 5 6 7").unwrap();
    assert_eq!(r["queues"], 4);
    assert_eq!(r["rainbow"], serde_json::json!([["0", "7"], ["1", "6"], ["2", "5"], ["3", "4"]]));
}

#[test]
fn partial_orders_are_completed_and_bad_labels_rejected() {
    let r = fixed_order_report("a b\nb c\nc d\nd a\n", "a, c").unwrap();
    assert_eq!(r["layout"]["order"], serde_json::json!(["a", "c", "b", "d"]));
    assert!(fixed_order_report("a b\n", "z").is_err());
    assert!(fixed_order_report("a b\n", "a a").is_err());
}

#[test]
fn one_queue_decisions() {
    let k33: String = (0..3).flat_map(|a| (0..3).map(move |b| format!("a{a} b{b}\n"))).collect();
    assert_eq!(one_queue_report(&k33, 0).unwrap()["answer"], "no");
    let broom: String = std::iter::once("r c\n".to_string()).chain((0..40).map(|i| format!("c l{i}\n"))).collect();
    let r = one_queue_report(&broom, 5).unwrap();
    assert_eq!(r["answer"], "yes");
    assert!(r["kernel_size"].as_u64().unwrap() <= 12);
    assert!(one_queue_report(&broom, 0).is_err());
    assert!(one_queue_report("a b\nc d\n", 0).unwrap()["answer"] == "yes");
}
