; expect: safe
(declare-var x Int)
(init (= x 0))
(trans (= x' (+ x 2)))
(good (not (= x 1)))
