// Generated from exact radical expressions; entries rounded to f64.
pub(crate) const QUADRUPLES: &[(usize, [&[f64]; 4])] = &[
    (
        1,
        [
            &[1.0],
            &[0.0],
            &[0.0],
            &[0.0],
        ],
    ),
    (
        2,
        [
            &[0.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.25, -0.4330127018922193, -0.4330127018922193, 0.75],
            &[0.25, 0.4330127018922193, 0.4330127018922193, 0.75],
        ],
    ),
    (
        3,
        [
            &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.4444444444444444, -0.49690399499995325, 0.0, -0.49690399499995325, 0.5555555555555556],
            &[0.3333333333333333, 0.19245008972987526, 0.43033148291193524, 0.19245008972987526, 0.1111111111111111, 0.24845199749997662, 0.43033148291193524, 0.24845199749997662, 0.5555555555555556],
            &[0.3333333333333333, -0.19245008972987526, -0.43033148291193524, -0.19245008972987526, 0.1111111111111111, 0.24845199749997662, -0.43033148291193524, 0.24845199749997662, 0.5555555555555556],
        ],
    ),
    (
        4,
        [
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.25, 0.0, -0.4330127018922193, 0.0, 0.0, 1.0, 0.0, 0.0, -0.4330127018922193, 0.0, 0.75, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.25, -0.24206145913796356, 0.21650635094610965, 0.28641098093474, -0.24206145913796356, 0.375, -0.4192627457812106, 0.0, 0.21650635094610965, -0.4192627457812106, 0.5, -0.16535945694153692, 0.28641098093474, 0.0, -0.16535945694153692, 0.875],
            &[0.25, 0.24206145913796356, 0.21650635094610965, -0.28641098093474, 0.24206145913796356, 0.375, 0.4192627457812106, 0.0, 0.21650635094610965, 0.4192627457812106, 0.5, 0.16535945694153692, -0.28641098093474, 0.0, 0.16535945694153692, 0.875],
        ],
    ),
    (
        5,
        [
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.16, 0.0, -0.3666060555964672, 0.0, 0.0, 0.0, 0.64, 0.0, -0.48, 0.0, -0.3666060555964672, 0.0, 0.84, 0.0, 0.0, 0.0, -0.48, 0.0, 0.36],
            &[0.4, 0.2683281572999748, 0.0, 0.40987803063838396, 0.0, 0.2683281572999748, 0.32, 0.10583005244258363, 0.1833030277982336, 0.3174901573277509, 0.0, 0.10583005244258363, 0.08, -0.06928203230275509, 0.24, 0.40987803063838396, 0.1833030277982336, -0.06928203230275509, 0.48, -0.20784609690826528, 0.0, 0.3174901573277509, 0.24, -0.20784609690826528, 0.72],
            &[0.4, -0.2683281572999748, 0.0, -0.40987803063838396, 0.0, -0.2683281572999748, 0.32, -0.10583005244258363, 0.1833030277982336, -0.3174901573277509, 0.0, -0.10583005244258363, 0.08, 0.06928203230275509, 0.24, -0.40987803063838396, 0.1833030277982336, 0.06928203230275509, 0.48, 0.20784609690826528, 0.0, -0.3174901573277509, 0.24, 0.20784609690826528, 0.72],
        ],
    ),
    (
        6,
        [
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.1111111111111111, 0.0, 0.0, -0.31426968052735443, 0.0, 0.0, 0.0, 0.4444444444444444, 0.0, 0.0, -0.49690399499995325, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -0.31426968052735443, 0.0, 0.0, 0.8888888888888888, 0.0, 0.0, 0.0, -0.49690399499995325, 0.0, 0.0, 0.5555555555555556, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.3611111111111111, 0.14433756729740643, -0.28463752127665554, 0.15713484026367722, 0.3227486121839514, 0.0, 0.14433756729740643, 0.19444444444444445, 0.0, -0.10206207261596575, 0.24845199749997662, 0.252304196174791, -0.28463752127665554, 0.0, 0.4166666666666667, -0.40253824294970664, 0.0, 0.0, 0.15713484026367722, -0.10206207261596575, -0.40253824294970664, 0.4722222222222222, -0.22821773229381923, 0.0, 0.3227486121839514, 0.24845199749997662, 0.0, -0.22821773229381923, 0.6388888888888888, -0.112833866731055, 0.0, 0.252304196174791, 0.0, 0.0, -0.112833866731055, 0.9166666666666666],
            &[0.3611111111111111, -0.14433756729740643, 0.28463752127665554, 0.15713484026367722, -0.3227486121839514, 0.0, -0.14433756729740643, 0.19444444444444445, 0.0, 0.10206207261596575, 0.24845199749997662, -0.252304196174791, 0.28463752127665554, 0.0, 0.4166666666666667, 0.40253824294970664, 0.0, 0.0, 0.15713484026367722, 0.10206207261596575, 0.40253824294970664, 0.4722222222222222, 0.22821773229381923, 0.0, -0.3227486121839514, 0.24845199749997662, 0.0, 0.22821773229381923, 0.6388888888888888, 0.112833866731055, 0.0, -0.252304196174791, 0.0, 0.0, 0.112833866731055, 0.9166666666666666],
        ],
    ),
];

pub(crate) const Q_PROJECTIONS: &[(usize, usize, &[f64])] = &[
    (2, 1, &[1.0, 0.0, 0.0, 0.0]),
    (3, 1, &[0.0, 0.0, 0.0, 0.0, 0.8333333333333334, -0.37267799624996495, 0.0, -0.37267799624996495, 0.16666666666666666]),
    (3, 2, &[1.0, 0.0, 0.0, 0.0, 0.8333333333333334, -0.37267799624996495, 0.0, -0.37267799624996495, 0.16666666666666666]),
    (4, 1, &[0.75, 0.0, -0.4330127018922193, 0.0, 0.0, 0.0, 0.0, 0.0, -0.4330127018922193, 0.0, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (4, 2, &[0.75, 0.0, -0.4330127018922193, 0.0, 0.0, 1.0, 0.0, 0.0, -0.4330127018922193, 0.0, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (4, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (5, 1, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.9, 0.0, -0.3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.3, 0.0, 0.1]),
    (5, 2, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.7, 0.0, -0.458257569495584, 0.0, 0.0, 0.0, 0.9, 0.0, -0.3, 0.0, -0.458257569495584, 0.0, 0.3, 0.0, 0.0, 0.0, -0.3, 0.0, 0.1]),
    (5, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.7, 0.0, -0.458257569495584, 0.0, 0.0, 0.0, 0.9, 0.0, -0.3, 0.0, -0.458257569495584, 0.0, 0.3, 0.0, 0.0, 0.0, -0.3, 0.0, 0.1]),
    (5, 4, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.9, 0.0, -0.3, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -0.3, 0.0, 0.1]),
    (6, 1, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.8333333333333334, 0.0, 0.0, -0.37267799624996495, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.37267799624996495, 0.0, 0.0, 0.16666666666666666, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (6, 2, &[0.6666666666666666, 0.0, 0.0, -0.4714045207910317, 0.0, 0.0, 0.0, 0.8333333333333334, 0.0, 0.0, -0.37267799624996495, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.4714045207910317, 0.0, 0.0, 0.3333333333333333, 0.0, 0.0, 0.0, -0.37267799624996495, 0.0, 0.0, 0.16666666666666666, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (6, 3, &[0.6666666666666666, 0.0, 0.0, -0.4714045207910317, 0.0, 0.0, 0.0, 0.8333333333333334, 0.0, 0.0, -0.37267799624996495, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -0.4714045207910317, 0.0, 0.0, 0.3333333333333333, 0.0, 0.0, 0.0, -0.37267799624996495, 0.0, 0.0, 0.16666666666666666, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (6, 4, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.8333333333333334, 0.0, 0.0, -0.37267799624996495, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -0.37267799624996495, 0.0, 0.0, 0.16666666666666666, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (6, 5, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
];
