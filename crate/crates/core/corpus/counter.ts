; expect: safe
(declare-var x Int)
(init (= x 0))
(trans (and (< x 10) (= x' (+ x 1))))
(good (<= x 10))
