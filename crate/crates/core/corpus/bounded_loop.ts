; expect: safe
(declare-var i Int)
(declare-var n Int)
(init (and (= i 0) (<= 0 n) (<= n 10)))
(trans (and (< i n) (= i' (+ i 1)) (= n' n)))
(good (<= i 10))
