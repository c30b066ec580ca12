//! Runs every example as a test.

mod bondal_ruan_map {
    include!("../examples/bondal_ruan_map.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod class_group {
    include!("../examples/class_group.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod cw_incidence {
    include!("../examples/cw_incidence.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod frobenius_pushforward {
    include!("../examples/frobenius_pushforward.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod report {
    include!("../examples/report.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod skeleton_inclusion {
    include!("../examples/skeleton_inclusion.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod skeleton_membership {
    include!("../examples/skeleton_membership.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod smith_normal_form {
    include!("../examples/smith_normal_form.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod stratification {
    include!("../examples/stratification.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod torus_cohomology {
    include!("../examples/torus_cohomology.rs");

    #[test]
    fn runs() {
        main();
    }
}

mod validate_fan {
    include!("../examples/validate_fan.rs");

    #[test]
    fn runs() {
        main();
    }
}
