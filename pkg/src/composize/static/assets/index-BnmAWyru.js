(function(){const e=document.createElement("link").relList;if(e&&e.supports&&e.supports("modulepreload"))return;for(const r of document.querySelectorAll('link[rel="modulepreload"]'))o(r);new MutationObserver(r=>{for(const s of r)if(s.type==="childList")for(const a of s.addedNodes)a.tagName==="LINK"&&a.rel==="modulepreload"&&o(a)}).observe(document,{childList:!0,subtree:!0});function n(r){const s={};return r.integrity&&(s.integrity=r.integrity),r.referrerPolicy&&(s.referrerPolicy=r.referrerPolicy),r.crossOrigin==="use-credentials"?s.credentials="include":r.crossOrigin==="anonymous"?s.credentials="omit":s.credentials="same-origin",s}function o(r){if(r.ep)return;r.ep=!0;const s=n(r);fetch(r.href,s)}})();class A extends Error{constructor(e,n,o){super(n),this.code=e,this.status=o}}async function Q(t,e,n,o=""){const r=await fetch(`${o}/api/v1/${t}`,{method:"POST",headers:{"Content-Type":"application/json"},body:JSON.stringify(e),signal:n}),s=await r.json();if(!r.ok)throw new A(s.code??"error",s.message??"request failed",r.status);return s}function P(t){return t.toFixed(2)}function U(t){return String(t)}function E(t){return String(t)}function N(t,e,n){const o=document.createElement("span");return o.textContent=t,o.title=e,n&&(o.className=n),o}function w(t){return N(P(t),E(t))}function W(t){return N(U(t),E(t))}const j="http://www.w3.org/2000/svg",x=640,y=360,d={top:16,right:16,bottom:36,left:56};function $(t,e){const[n,o]=t,[r,s]=e,a=o-n||1,i=l=>r+(l-n)/a*(s-r);return i.domain=t,i}function f(t,e){const n=document.createElementNS(j,t);for(const[o,r]of Object.entries(e))n.setAttribute(o,r);return n}function q(t,e){return t.map((n,o)=>`${n},${e[o]}`).join(" ")}function D(t,e,n,o){const r=d.left,s=x-d.right,a=y-d.bottom;t.append(f("line",{x1:`${r}`,y1:`${a}`,x2:`${s}`,y2:`${a}`,class:"axis"}),f("line",{x1:`${r}`,y1:`${d.top}`,x2:`${r}`,y2:`${a}`,class:"axis"}));for(const l of[e.domain[0],(e.domain[0]+e.domain[1])/2,e.domain[1]]){const p=f("text",{x:`${e(l)}`,y:`${a+24}`,class:"tick","text-anchor":"middle"});p.textContent=P(l),t.append(p)}for(const l of[n.domain[0],n.domain[1]]){const p=f("text",{x:`${r-8}`,y:`${n(l)+4}`,class:"tick","text-anchor":"end"});p.textContent=o==="n"?U(Math.round(l)):P(l),t.append(p)}const i=f("text",{x:`${(r+s)/2}`,y:`${y-4}`,class:"axis-label","text-anchor":"middle"});i.textContent="correlation",t.append(i)}function B(t,e,n,o,r){const s=f("circle",{cx:`${e}`,cy:`${n}`,r:"3",class:r});for(const[i,l]of Object.entries(o))s.dataset[i]=E(l);const a=document.createElementNS(j,"title");a.textContent=Object.entries(o).map(([i,l])=>`${i}=${E(l)}`).join(", "),s.append(a),t.append(s)}function Y(t,e,n){const o=f("svg",{viewBox:`0 0 ${x} ${y}`,class:"chart curve-chart",role:"img"});if(t.length===0)return o;const r=t.map(c=>c.rho),s=t.map(c=>c.n_high),a=t.map(c=>c.n_low),i=$([r[0],r[r.length-1]],[d.left,x-d.right]);let l=Math.min(...a),p=Math.max(...s);n&&(l=Math.min(l,n.n_total),p=Math.max(p,n.n_total));const h=(p-l||1)*.05,m=$([l-h,p+h],[y-d.bottom,d.top]);if(t.some(c=>c.n_high!==c.n_low)){const c=t.map(v=>`${i(v.rho)},${m(v.n_high)}`),_=[...t].reverse().map(v=>`${i(v.rho)},${m(v.n_low)}`);o.append(f("polygon",{points:[...c,..._].join(" "),class:"band"}))}const K=new Map(e.map(c=>[c.category,c]));for(const c of["weak","moderate"]){const _=K.get(c);if(!_)continue;const v=i(_.rho_interval[1]),L=f("line",{x1:`${v}`,y1:`${d.top}`,x2:`${v}`,y2:`${y-d.bottom}`,class:"separator"});L.dataset.category=c,L.dataset.rho=E(_.rho_interval[1]),o.append(L)}o.append(f("polyline",{points:q(t.map(c=>i(c.rho)),t.map(c=>m(c.n_point))),class:"line n-line",fill:"none"}));for(const c of t)B(o,i(c.rho),m(c.n_point),{rho:c.rho,n:c.n_point,nLow:c.n_low,nHigh:c.n_high},"pt curve-pt");return n&&B(o,i(n.design_rho),m(n.n_total),{rho:n.design_rho,n:n.n_total},"marker"),D(o,i,m,"n"),o}function J(t,e,n){const o=f("svg",{viewBox:`0 0 ${x} ${y}`,class:"chart power-chart",role:"img"});if(t.length===0)return o;const r=t.map(u=>u.rho);n&&r.push(n.design_rho);const s=$([Math.min(...r),Math.max(...r)],[d.left,x-d.right]),a=t.map(u=>u.power).concat(e);n&&a.push(n.achieved_power_at_design);const i=Math.min(...a),l=Math.max(...a),p=(l-i||1)*.1,h=$([i-p,l+p],[y-d.bottom,d.top]),m=f("line",{x1:`${d.left}`,y1:`${h(e)}`,x2:`${x-d.right}`,y2:`${h(e)}`,class:"target"});m.dataset.power=E(e),o.append(m),o.append(f("polyline",{points:q(t.map(u=>s(u.rho)),t.map(u=>h(u.power))),class:"line power-line",fill:"none"}));for(const u of t)B(o,s(u.rho),h(u.power),{rho:u.rho,power:u.power},"pt power-pt");return n&&B(o,s(n.design_rho),h(n.achieved_power_at_design),{rho:n.design_rho,power:n.achieved_power_at_design},"marker"),D(o,s,h,"power"),o}function T(t){const e=document.createElement("div");return e.className="chart-empty",e.textContent=t,e}const G={weak:"weak",moderate:"moderate",strong:"strong",no_prior:"no prior"};function X(t,e=null){const n=document.createElement("div");n.className="bounds-panel";const o=document.createElement("p");o.append("Feasible correlation: ",w(t.lower)," to ",w(t.upper)),n.append(o);const r=new Map((e??[]).map(i=>[i.category,i])),s=r.get("weak"),a=r.get("moderate");if(s&&a){const i=document.createElement("p");i.className="breakpoints",i.append("Category breakpoints: weak up to ",w(s.rho_interval[1]),", moderate up to ",w(a.rho_interval[1])),n.append(i)}return n}function Z(t,e){const n=document.createElement("tr");n.dataset.category=t.category,e&&(n.className="selected");const o=document.createElement("td");o.textContent=G[t.category],n.append(o);const r=document.createElement("td");r.append(w(t.rho_interval[0])," to ",w(t.rho_interval[1])),n.append(r);const s=document.createElement("td");s.className="n-total",s.append(W(t.n_total)),n.append(s);const a=document.createElement("td");return a.append(w(t.power_range[0])," to ",w(t.power_range[1])),n.append(a),n}function ee(t,e,n){const o=document.createElement("table");o.className="recommendations";const r=o.createTHead().insertRow();for(const a of["prior","correlation interval","n total","power range"]){const i=document.createElement("th");i.textContent=a,r.append(i)}const s=o.createTBody();for(const a of t.recommendations){const i=Z(a,a.category===e);n&&i.addEventListener("click",()=>n(a.category)),s.append(i)}return o}function te(t){const e=document.createElement("p");return e.className="error",e.append(N(t,t,"error-message")),e}const b={useIntervals:!1,p1:"0.095",p2:"0.137",p1Lo:"0.078",p1Hi:"0.112",p2Lo:"0.117",p2Hi:"0.157",measure:"rd",e1:"-0.022",e2:"-0.027",alpha:"0.025",power:"0.8",variance:"pooled",category:"strong",panel:"n"},k={rd:["d1","d2"],rr:["r1","r2"],or:["o1","o2"]};function g(t,e){const n=Number(t);if(t.trim()===""||!Number.isFinite(n))throw new Error(`${e} must be a number`);return n}function I(t,e,n){return[g(t,n),g(e,n)]}function V(t){return t.useIntervals?{p1_interval:I(t.p1Lo,t.p1Hi,"p1 interval"),p2_interval:I(t.p2Lo,t.p2Hi,"p2 interval")}:{p1:g(t.p1,"p1"),p2:g(t.p2,"p2")}}function S(t){const[e,n]=k[t.measure];return{[e]:g(t.e1,e),[n]:g(t.e2,n)}}function M(t){return{alpha:g(t.alpha,"alpha"),power:g(t.power,"power"),variance:t.variance}}function ne(t){return{p1:g(t.p1,"p1"),p2:g(t.p2,"p2"),...S(t)}}function oe(t){return{...V(t),...S(t),...M(t)}}function re(t){return{...V(t),...S(t),...M(t)}}function se(t,e,n){return{p1:g(t.p1,"p1"),p2:g(t.p2,"p2"),...S(t),...M(t),rho:e,n}}function ae(t){const e=new URLSearchParams;t.useIntervals?(e.set("p1_interval",`${t.p1Lo},${t.p1Hi}`),e.set("p2_interval",`${t.p2Lo},${t.p2Hi}`)):(e.set("p1",t.p1),e.set("p2",t.p2));const[n,o]=k[t.measure];return e.set(n,t.e1),e.set(o,t.e2),t.alpha!==b.alpha&&e.set("alpha",t.alpha),t.power!==b.power&&e.set("power",t.power),t.variance!==b.variance&&e.set("variance",t.variance),t.category!==b.category&&e.set("category",t.category),t.panel!==b.panel&&e.set("panel",t.panel),e.toString()}function H(t){const e=t.split(",");return e.length===2?[e[0],e[1]]:null}function ie(t){const e=new URLSearchParams(t),n={...b},o=e.get("p1_interval"),r=e.get("p2_interval");if(o!==null&&r!==null){const l=H(o),p=H(r);l&&p&&(n.useIntervals=!0,[n.p1Lo,n.p1Hi]=l,[n.p2Lo,n.p2Hi]=p)}else n.p1=e.get("p1")??n.p1,n.p2=e.get("p2")??n.p2;for(const l of Object.keys(k)){const[p,h]=k[l],m=e.get(p),u=e.get(h);if(m!==null&&u!==null){n.measure=l,n.e1=m,n.e2=u;break}}n.alpha=e.get("alpha")??n.alpha,n.power=e.get("power")??n.power;const s=e.get("variance");(s==="pooled"||s==="unpooled")&&(n.variance=s);const a=e.get("category");(a==="weak"||a==="moderate"||a==="strong"||a==="no_prior")&&(n.category=a);const i=e.get("panel");return(i==="n"||i==="power")&&(n.panel=i),n}const z=250,O=21;function le(t,e){return Array.from({length:O},(n,o)=>t+(e-t)*((o+.5)/O))}const ce={rd:"risk differences",rr:"risk ratios",or:"odds ratios"};function F(t){return t instanceof A?t.message:`request failed: ${t.message}`}function C(t,e){const n=document.createElement("label"),o=document.createElement("span");return o.textContent=t,n.append(o,e),n}function pe(t,e){const n=document.createElement("input");return n.type="text",n.id=t,n.value=e,n.size=8,n}function R(t,e,n){const o=document.createElement("select");o.id=t;for(const[r,s]of e){const a=document.createElement("option");a.value=r,a.textContent=s,o.append(a)}return o.value=n,o}class he{constructor(e,n={}){this.root=e,this.controller=null,this.timer=null,this.lastBounds=null,this.lastRecommend=null,this.lastCurve=null,this.lastError="",this.messages=document.createElement("div"),this.boundsBox=document.createElement("section"),this.chartBox=document.createElement("section"),this.tableBox=document.createElement("section"),this.inputs={},this.panelButtons={},this.post=n.post??((o,r,s)=>Q(o,r,s)),this.debounceMs=n.debounceMs??z,this.onUrlChange=n.onUrlChange,this.state=ie(n.initialQuery??""),this.buildSkeleton(),this.refresh()}buildSkeleton(){this.root.replaceChildren();const e=document.createElement("form");e.className="inputs",e.addEventListener("submit",s=>s.preventDefault()),this.intervalToggle=document.createElement("input"),this.intervalToggle.type="checkbox",this.intervalToggle.id="use-intervals",this.intervalToggle.checked=this.state.useIntervals,e.append(C("rate intervals",this.intervalToggle));const n=(s,a,i)=>{const l=pe(s,i);return this.inputs[s]=l,e.append(C(a,l)),l};n("p1","p1 (control)",this.state.p1),n("p2","p2 (control)",this.state.p2),n("p1-lo","p1 low",this.state.p1Lo),n("p1-hi","p1 high",this.state.p1Hi),n("p2-lo","p2 low",this.state.p2Lo),n("p2-hi","p2 high",this.state.p2Hi),this.measureSel=R("measure",[["rd","risk difference"],["rr","risk ratio"],["or","odds ratio"]],this.state.measure);const o=C("effect measure",this.measureSel);this.effectCaption=o.querySelector("span"),e.append(o),n("e1","effect 1",this.state.e1),n("e2","effect 2",this.state.e2),n("alpha","alpha (one-sided)",this.state.alpha),n("power","target power",this.state.power),this.varianceSel=R("variance",[["pooled","pooled"],["unpooled","unpooled"]],this.state.variance),e.append(C("variance",this.varianceSel));const r=document.createElement("div");r.className="panel-toggle";for(const s of["n","power"]){const a=document.createElement("button");a.type="button",a.textContent=s==="n"?"sample size":"power",a.dataset.panel=s,a.addEventListener("click",()=>{this.state.panel=s,this.schedule(0)}),this.panelButtons[s]=a,r.append(a)}e.append(r),this.messages.className="messages",this.boundsBox.className="bounds",this.chartBox.className="chart-box",this.tableBox.className="table-box",this.root.append(e,this.messages,this.boundsBox,this.chartBox,this.tableBox),e.addEventListener("input",()=>{this.readForm(),this.schedule(this.debounceMs)}),this.syncFormVisibility()}readForm(){const e=this.state;e.useIntervals=this.intervalToggle.checked,e.p1=this.inputs.p1.value,e.p2=this.inputs.p2.value,e.p1Lo=this.inputs["p1-lo"].value,e.p1Hi=this.inputs["p1-hi"].value,e.p2Lo=this.inputs["p2-lo"].value,e.p2Hi=this.inputs["p2-hi"].value,e.measure=this.measureSel.value,e.e1=this.inputs.e1.value,e.e2=this.inputs.e2.value,e.alpha=this.inputs.alpha.value,e.power=this.inputs.power.value,e.variance=this.varianceSel.value,this.syncFormVisibility()}syncFormVisibility(){const e=this.state.useIntervals;for(const n of["p1","p2"])this.inputs[n].parentElement.hidden=e;for(const n of["p1-lo","p1-hi","p2-lo","p2-hi"])this.inputs[n].parentElement.hidden=!e;this.effectCaption.textContent=`effect measure (${ce[this.state.measure]})`,this.panelButtons.power.disabled=e,this.panelButtons.power.title=e?"power panel needs point rates":"achieved power at the recommended n";for(const n of["n","power"])this.panelButtons[n].classList.toggle("active",this.state.panel===n)}schedule(e){this.timer!==null&&clearTimeout(this.timer),this.timer=setTimeout(()=>{this.timer=null,this.refresh()},e)}selectedRow(){var e;return(e=this.lastRecommend)==null?void 0:e.recommendations.find(n=>n.category===this.state.category)}selectCategory(e){this.state.category=e,this.pushUrl(),this.renderPanels(),this.state.panel==="power"&&this.schedule(0)}pushUrl(){const e=ae(this.state);this.onUrlChange?this.onUrlChange(e):typeof history<"u"&&history.replaceState(null,"",`?${e}`)}async refresh(){var p;this.pushUrl(),(p=this.controller)==null||p.abort();const e=new AbortController;this.controller=e;let n,o,r;try{n=this.state.useIntervals?null:ne(this.state),o=oe(this.state),r=re(this.state)}catch(h){this.showMessage(h.message);return}const[s,a,i]=await Promise.allSettled([n===null?Promise.resolve(null):this.post("bounds",n,e.signal),this.post("recommend",o,e.signal),this.post("curve",r,e.signal)]);if(e.signal.aborted)return;const l=[a,i,s].filter(h=>h.status==="rejected");if(!l.some(h=>h.reason.name==="AbortError")&&(this.lastBounds=s.status==="fulfilled"?s.value:null,this.lastRecommend=a.status==="fulfilled"?a.value:null,this.lastCurve=i.status==="fulfilled"?i.value:null,this.lastError=l.length===0?"":F(l[0].reason),this.showMessage(this.lastError),this.renderPanels(),l.length===0&&this.state.panel==="power"&&!this.state.useIntervals))try{await this.loadPowerPanel(e)}catch(h){if(h.name==="AbortError")return;const m=F(h);this.showMessage(m),this.chartBox.replaceChildren(T(m))}}async loadPowerPanel(e){const n=this.selectedRow(),o=this.lastRecommend;if(!n||!o)return;const r=le(o.bounds.lower,o.bounds.upper),s=await Promise.all(r.map(i=>this.post("power",se(this.state,i,n.n_total),e.signal)));if(e.signal.aborted)return;const a=r.map((i,l)=>({rho:i,power:s[l].power}));this.chartBox.replaceChildren(this.chartCaption(`achieved power at n = ${n.n_total} (${G[n.category]})`),J(a,Number(this.state.power),n))}chartCaption(e){const n=document.createElement("p");return n.className="chart-caption",n.textContent=e,n}renderPanels(){var r;const e=this.lastRecommend,n=this.lastCurve,o=this.state.useIntervals?e==null?void 0:e.bounds:(r=this.lastBounds)==null?void 0:r.bounds;o?this.boundsBox.replaceChildren(X(o,(e==null?void 0:e.recommendations)??null)):this.boundsBox.replaceChildren(),e?this.tableBox.replaceChildren(ee(e,this.state.category,s=>this.selectCategory(s))):this.tableBox.replaceChildren(),this.state.panel==="n"&&(e&&n?this.chartBox.replaceChildren(this.chartCaption("total sample size against correlation"),Y(n.curve,e.recommendations,this.selectedRow())):this.chartBox.replaceChildren(T(this.lastError||"nothing to plot yet"))),this.syncFormVisibility()}showMessage(e){this.messages.replaceChildren(),e&&this.messages.append(te(e))}}function ue(){const t=document.getElementById("app");t&&new he(t,{initialQuery:location.search,debounceMs:z})}typeof document<"u"&&ue();
