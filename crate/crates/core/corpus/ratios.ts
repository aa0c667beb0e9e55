; expect: safe
(declare-var a Int)
(declare-var b Int)
(declare-var c Int)
(declare-var d Int)
(init (and (= a 0) (= b 0) (= c 0) (= d 0)))
(trans (and (= a' (+ a 1)) (= b' (+ b 2)) (= c' (+ c 3)) (= d' (- d 1))))
(good (and (= (+ b c) (* 5 a)) (= (+ a d) 0)))
