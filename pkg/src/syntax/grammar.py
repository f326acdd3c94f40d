"""
Concrete syntax of instance files, update lists and single facts.

Keywords only win over identifiers where the parser can accept both, so
`true`, `false` and `not` stay usable as constants inside argument lists.
"""

INSTANCE_GRAMMAR = r"""
start: _section*

_section: base_decl
        | derived_decl
        | db_block
        | except_block
        | ic_block
        | view_block
        | request_block

base_decl: "base" pred_decl ("," pred_decl)* "."
derived_decl: "derived" pred_decl ("," pred_decl)* "."
pred_decl: NAME "/" INT

db_block: "db" "{" (ground_atom ".")* "}"
except_block: "except" "{" (ground_atom ".")* "}"

ic_block: "ic" "{" constraint* "}"
constraint: prefix? antecedent "->" consequent "."
prefix: exists_part forall_part? ":"
      | forall_part ":"
exists_part: "exists" var_list
forall_part: "forall" var_list
var_list: VAR ("," VAR)*
antecedent: (ic_literal ("," ic_literal)*)?
?ic_literal: atom
           | "not" atom -> negated
           | comparison
consequent: FALSE -> falsity
          | cons_literal ("|" cons_literal)*
?cons_literal: atom
             | comparison

view_block: "view" "{" rule* "}"
rule: atom (":-" body_literal ("," body_literal)*)? "."
?body_literal: atom
             | "not" atom -> negated
             | comparison

request_block: "request" "{" request_part* "}"
request_part: TRUE ":" (ground_atom ("," ground_atom)*)? ";"
            | FALSE ":" (ground_atom ("," ground_atom)*)? ";"

comparison: term COMPARE term
atom: NAME ("(" term ("," term)* ")")?
ground_atom: NAME ("(" constant ("," constant)* ")")?

?term: VAR -> variable
     | constant
constant: NAME -> symbol
        | INT -> numeral
        | "null" -> null

fact_only: ground_atom
update_only: (action ","?)*
action: SIGN ground_atom "@" NAME

TRUE: "true"
FALSE: "false"
COMPARE: "<=" | "="
SIGN: "+" | "-"
NAME: /[a-z][A-Za-z0-9_]*'*/
VAR: /[A-Z][A-Za-z0-9_]*'*/
INT: /[0-9]+/
COMMENT: /%[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""
